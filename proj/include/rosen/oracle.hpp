#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "rosen/kernels.hpp"
#include "rosen/paths.hpp"

namespace rosen {

struct ChaosGridSpec {
  double x_min = -50.0;          // domain truncation, < 0
  double mesh = 0.1;             // uniform cell width, <= |x_min|/100
  std::vector<double> t_grid;    // output times, increasing, > x_min
};

// Off-diagonal double sum over the cells of [x_min, max t]:
//   X_t = cH sum_{i != j} g_t(xm_i, xm_j) dB_i dB_j,
// the discrete double Wiener-Ito integral (no trace term, E X = 0). Kernel
// values are cached per pair and grown incrementally across t_grid.
class ChaosGridOracle {
 public:
  ChaosGridOracle(const ChaosGridSpec& spec, const Params& p, double cH,
                  long max_cells = 4000);

  // one sample path on t_grid; rep indexes the replicate deterministically
  std::vector<double> sample(uint64_t seed, uint64_t rep) const;

  // exact variance of the discrete functional: 2 cH^2 sum_{i!=j} g^2 dx^2
  double discrete_var(size_t t_index) const;

  const ChaosGridSpec& spec() const { return spec_; }
  size_t cells() const { return m_; }

 private:
  double kernel_at(size_t t_index, size_t i, size_t j) const;
  ChaosGridSpec spec_;
  Params p_;
  double cH_;
  size_t m_;
  double dx_;
  std::vector<double> mids_;
  std::vector<std::vector<double>> G_;  // per t: packed upper triangle i<j
};

// One-shot wrapper matching the operation contract; builds (or reuses) the
// cache behind a process-wide store keyed by the spec.
std::vector<double> simulate_chaos_grid(const ChaosGridSpec& spec, const Params& p, double cH,
                                        uint64_t seed, uint64_t rep = 0);

// sum_{i != j} k(x_i, x_j) dB_i dB_j over the cells of B covering region
double grid_double_sum(const std::function<double(double, double)>& kernel, const GridPath& B,
                       double lo, double hi);

struct RemainderSummary {
  double mean_abs = 0, std_abs = 0;
  double q05 = 0, q25 = 0, q50 = 0, q75 = 0, q95 = 0;
  int reps = 0;
};

// MC summary of |c(H) G^n_t|, the near-diagonal remainder
//   G^n_t = sum_{i!=j} [int_{x v}^{(x v + eps) ^ t} (s-x1)^{H/2-1}(s-x2)^{H/2-1} ds] dB dB.
RemainderSummary estimate_remainder(double t, double eps, const Params& p, double cH, int reps,
                                    uint64_t seed);

// Deterministically cached |G| scale at (t, eps) for run error budgets.
double cached_remainder_estimate(const Params& p, double t, double eps, double cH);

}  // namespace rosen
