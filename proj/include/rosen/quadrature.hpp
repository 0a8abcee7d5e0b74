#pragma once

#include <functional>

#include "rosen/errors.hpp"

namespace rosen {

struct QuadSpec {
  int points = 64;                 // initial subcell count, >= 16
  double grading_exponent = 0.0;   // 0 means: derive from the singular exponent
  double target_rel_err = 1e-8;    // in (0, 1e-2]
};

using Fn1 = std::function<double(double)>;

// Adaptive Simpson with local tolerance halving. rel_tol is relative to the
// running whole-interval estimate, abs_floor guards near-zero integrals.
double adaptive_simpson(const Fn1& f, double a, double b, double rel_tol,
                        double abs_floor = 1e-300, int max_depth = 48);

// Adaptive Gauss-Kronrod 7-15 on an interval stack. Structurally independent
// of adaptive_simpson; used as the second scheme in dual-quadrature checks.
double adaptive_gk15(const Fn1& f, double a, double b, double rel_tol,
                     double abs_floor = 1e-300, int max_intervals = 20000);

// int_0^t F(s) ds for F with an integrable power singularity at 0,
// F(s) ~ s^singular_exponent. Composite midpoint on the graded mesh
// s_j = t (j/J)^p with p = spec.grading_exponent, or 2/(1+singular_exponent)
// when the spec leaves it at 0. J doubles until the result moves by less
// than target_rel_err.
double graded_time_quadrature(const Fn1& F, double t, const QuadSpec& spec,
                              double singular_exponent);

// The graded mesh edges used by graded_time_quadrature, exposed so path-level
// integrals can share one mesh across components.
void graded_mesh_edges(double t, int cells, double grading, double* edges /*cells+1*/);

}  // namespace rosen
