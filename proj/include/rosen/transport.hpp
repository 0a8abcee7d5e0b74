#pragma once

#include <cstdint>
#include <vector>

#include "rosen/paths.hpp"

namespace rosen {

// Uniform transport (telegraph) path: speed n, direction flips at the events
// of a Poisson(n^2) process, position 0 at the anchor. Paths anchored on the
// right (Z2, Z3) are simulated in reversed time from 0; the law is unchanged.
struct TransportPath {
  PiecewiseLinearPath pl;  // knots in increasing time order
  int n = 1;
  int sigma0 = 1;          // sign of the first segment in simulation order
  bool anchored_right = false;

  double lo() const { return pl.lo(); }
  double hi() const { return pl.hi(); }
  double value_at(double t) const { return pl.value_at(t); }
};

// Switch gaps in simulation order (from the anchor): the first entry is the
// full waiting time to the first switch, the trailing partial segment is
// censored and excluded. Sum of gaps + final partial = interval length.
std::vector<double> extract_gaps(const TransportPath& Z);

// iid Exp(n^2) gaps, initial velocity +-n with probability 1/2, alternation
// thereafter. anchor_right puts the 0 of the path at interval end.
TransportPath simulate_transport(int n, double lo, double hi, CounterStream stream,
                                 bool anchor_right = false);

struct CouplingOptions {
  double block_mesh = 0.0;  // 0: max(1/n, 8/n^2)
  double window = 0.08;     // acceptance window, in units of sqrt(block length)
  int max_attempts = 128;
  long table_samples = 1'000'000;
};

double default_block_mesh(int n);

// Surrogate pathwise coupling: the interval is split into blocks aligned with
// B's grid; per block the transport increment is targeted at
// Q_sigma(Phi(dB/sqrt(len))) through the tabulated block-increment quantile
// function, and block paths are drawn from the true dynamics by rejection
// into a +-window around the target. Marginal transport law is preserved up
// to the window width; closeness to B is an empirical property, tested, not
// assumed. B must be anchored at 0 on the anchor side.
TransportPath couple_transport(const GridPath& B, int n, double block_mesh, CounterStream stream,
                               bool anchor_right = false, const CouplingOptions& opt = {});

// Tabulated empirical quantile function of the block increment started from
// sign +1; built once per (n, len) with a fixed tabulation seed and cached
// process-wide. Exposed for tests.
const std::vector<double>& block_increment_table(int n, double len, long samples = 1'000'000);

}  // namespace rosen
