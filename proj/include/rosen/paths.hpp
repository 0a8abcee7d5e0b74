#pragma once

#include <cstdint>
#include <vector>

#include "rosen/params.hpp"
#include "rosen/rng.hpp"

namespace rosen {

// Knot sequence with linear interpolation between knots. Used both for
// sampled Brownian drivers (GridPath) and for exact transport segments.
struct PiecewiseLinearPath {
  std::vector<double> times;   // strictly increasing
  std::vector<double> values;  // same length

  double lo() const { return times.front(); }
  double hi() const { return times.back(); }
  size_t size() const { return times.size(); }

  // index of the last knot with times[i] <= t (clamped to [0, size-2])
  size_t cell_index(double t) const;
  double value_at(double t) const;
};

using GridPath = PiecewiseLinearPath;

// max |P - Q| over [lo,hi]; both paths are piecewise linear, so the supremum
// is attained on the merged knot set (the difference is linear in between).
double sup_distance(const PiecewiseLinearPath& P, const PiecewiseLinearPath& Q, double lo,
                    double hi);

// Jointly lawful drivers built from one two-sided Wiener process:
//   B1 = B on [0,T];  B2 = B on [a,0];  B3(s) = s B(1/s) on [1/a,0), B3(0)=0.
// B2 and B3 share the underlying B (they meet at B(a)); B1 is independent.
struct DriverBundle {
  GridPath B1;  // uniform grid on [0,T]
  GridPath B2;  // uniform grid on [a,0], anchored B2(0)=0
  GridPath B3;  // grid on [1/a,0]: uniform knots merged with a geometric
                // refinement near 0 down to |u| = delta; final knot (0,0)
  double delta = 0.0;          // smallest |u| resolved by B3 (before the 0 knot)
  uint64_t seed = 0;           // seed the bundle was generated from
  std::vector<uint64_t> seed_trace;  // stream keys consumed, in order
};

// Generation order: B2 backward from 0 on [a,0]; B extended backward from
// B2(a) on the geometric image grid; B3 assembled as s B(1/s). This realizes
// the joint law of the three drivers (B2, B3 are dependent; B1 independent).
// delta = min(eps_n/8, mesh.delta_floor).
DriverBundle simulate_driver_bundle(const Params& p, const MeshSpec& mesh, uint64_t seed);

}  // namespace rosen
