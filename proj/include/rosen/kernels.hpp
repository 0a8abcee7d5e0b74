#pragma once

#include "rosen/params.hpp"
#include "rosen/quadrature.hpp"

namespace rosen {

struct KernelConstants {
  double cH = 0.0;          // normalizer: E(cH I2(g_1))^2 = 1
  double cH_rel_err = 0.0;  // quadrature + tail error of the norm behind cH
  double g_norm2 = 0.0;     // ||g_1||^2 over (-inf,1]^2
  double tail_bound = 0.0;  // analytic bound on the mass beyond the truncation
  double trunc_M = 0.0;     // truncation point used by the outer quadrature
};

// R^H(t,s) = ((t^2H + s^2H - |t-s|^2H)) / 2
double fbm_covariance(double t, double s, double H);

// f_s(x) = (s-x)^{H/2-1}, and d/dx f_s(x) = (1-H/2)(s-x)^{H/2-2}; x < s.
double kernel_f(double s, double x, const Params& p, bool deriv = false);

// int_{x0}^{x1} (s+shift-x)^{H/2-1} dx, exact antiderivative.
// Requires x0 <= x1 <= s+shift (x1 = s+shift allowed).
double segment_integral_f(double s, double shift, double x0, double x1, const Params& p);

// int_{u0}^{u1} (1-H/2)(s-1/u)^{H/2-2} u^{-3} (c+mu) du for u0 <= u1 < 0,
// exact via the substitution x = 1/u.
double segment_integral_weighted(double s, double u0, double u1, double c, double m,
                                 const Params& p);

// g_t(y1,y2) = int_{y1 v y2}^{t} (u-y1)^{H/2-1}(u-y2)^{H/2-1} du, y1 != y2.
// Production scheme: singularity absorbed by a graded substitution, then
// adaptive Simpson at 1e-8 relative.
double rosenblatt_kernel_g(double t, double y1, double y2, const Params& p);

// Same integral by adaptive Gauss-Kronrod with geometric endpoint splitting;
// test oracle for the dual-quadrature check.
double rosenblatt_kernel_g_alt(double t, double y1, double y2, const Params& p);

// cH = (2 ||g_1||^2)^{-1/2} with the norm computed by nested adaptive
// quadrature over (-M,1]^2 (log-substituted axes) and an analytic bound for
// the mass beyond -M. quad_budget caps the number of g evaluations.
KernelConstants normalizing_constant(const Params& p, long quad_budget = 40'000'000,
                                     double horizon = 1.0);

}  // namespace rosen
