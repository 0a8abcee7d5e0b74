#pragma once

#include <cstdint>
#include <utility>

#include "rosen/errors.hpp"

namespace rosen {

// Mesh block: resolution knobs for driver grids and the time quadrature.
struct MeshSpec {
  int bm_mesh = 2048;            // uniform grid cells per unit time (B1, B2)
  int b3_points_per_decade = 64; // geometric grid density for the inverted driver
  double delta_floor = 1e-8;     // smallest |u| carried by the B3 grid
  int output_grid_size = 33;     // output times on [0,T], first one is 0
  int time_quad_points = 256;    // total time-quadrature subcells on (0,T]
};

struct Params {
  double H = 0.75;   // Hurst index, (1/2,1)
  double beta = 0.44;
  double gamma = 0.03;
  double a = -1.0;   // left truncation point, a < 0
  double T = 1.0;
  int n = 64;        // transport intensity
  MeshSpec mesh;
  uint64_t seed = 1;
};

// lo = max((1-H/2)/(3-2H), (2-H)/(2+2H)), hi = 1/2
std::pair<double, double> beta_range(double H);

// Validates the constraint set and returns the tuple unchanged.
// Throws rosen::error with the violated constraint named.
Params validate_params(const Params& raw);

// eps_n = n^(-beta/(1-H/2))
double epsilon_n(int n, const Params& p);

// alpha_n = n^(-(1/2-beta)) (log n)^(5/2); hat variant uses 1/2-beta-gamma.
// Natural logarithm. Requires n >= 2.
double alpha_n(int n, const Params& p, bool hat = false);

}  // namespace rosen
