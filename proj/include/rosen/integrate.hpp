#pragma once

#include "rosen/kernels.hpp"
#include "rosen/paths.hpp"
#include "rosen/transport.hpp"

namespace rosen {

// int_{x0}^{x1} (s+shift-x)^{H/2-1} dZ(x) for a piecewise-linear Z:
// sum over segments of slope * segment_integral_f. Exact to rounding.
double stieltjes_pl(double s, double shift, const PiecewiseLinearPath& Z, double x0, double x1,
                    const Params& p);

inline double stieltjes_pl(double s, double shift, const TransportPath& Z, double x0, double x1,
                           const Params& p) {
  return stieltjes_pl(s, shift, Z.pl, x0, x1, p);
}

// Wiener-sum discretization of int_{x0}^{x1} (s+shift-x)^{H/2-1} dB(x) on B's
// grid: midpoint kernel values against grid increments; cells whose midpoint
// sits within one cell width of the singularity use the exact cell average.
double wiener_grid_integral(double s, double shift, const GridPath& B, double x0, double x1,
                            const Params& p);

// int_{u0}^{u1} (1-H/2)(s-1/u)^{H/2-2} u^{-3} P(u) du for piecewise-linear P,
// exact per linear piece via segment_integral_weighted. u1 <= 0.
double riemann_weighted_pl(double s, const PiecewiseLinearPath& P, double u0, double u1,
                           const Params& p);

inline double riemann_weighted_pl(double s, const TransportPath& P, double u0, double u1,
                                  const Params& p) {
  return riemann_weighted_pl(s, P.pl, u0, u1, p);
}

}  // namespace rosen
