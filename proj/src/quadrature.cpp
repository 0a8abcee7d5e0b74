#include "rosen/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace rosen {

namespace {

struct SimpsonCell {
  double a, b, fa, fm, fb, whole;
};

double simpson(double fa, double fm, double fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson_rec(const Fn1& f, double a, double b, double fa, double fm, double fb,
                            double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double err = left + right - whole;
  if (depth <= 0 || std::abs(err) <= 15.0 * tol) return left + right + err / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const Fn1& f, double a, double b, double rel_tol, double abs_floor,
                        int max_depth) {
  if (b <= a) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = simpson(fa, fm, fb, b - a);
  const double tol = std::max(std::abs(whole) * rel_tol, abs_floor);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

namespace {

// Gauss-Kronrod 7-15 nodes/weights on [-1,1]
constexpr double kXgk[8] = {0.991455371120813, 0.949107912342759, 0.864864423359769,
                            0.741531185599394, 0.586087235467691, 0.405845151377397,
                            0.207784955007898, 0.0};
constexpr double kWgk[8] = {0.022935322010529, 0.063092092629979, 0.104790010322250,
                            0.140653259715525, 0.169004726639267, 0.190350578064785,
                            0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                           0.417959183673469};

void gk15(const Fn1& f, double a, double b, double& result, double& err) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = f(c);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  for (int i = 0; i < 7; ++i) {
    const double x = h * kXgk[i];
    const double f1 = f(c - x), f2 = f(c + x);
    resk += kWgk[i] * (f1 + f2);
    if (i % 2 == 1) resg += kWg[i / 2] * (f1 + f2);
  }
  result = resk * h;
  err = std::abs((resk - resg) * h);
  // standard rescaling of the raw Kronrod error estimate
  if (err > 0.0) err = std::pow(200.0 * err, 1.5) * std::min(1.0, 1.0 / (200.0 * std::sqrt(err)));
  err = std::max(err, std::abs((resk - resg) * h) * 1e-6);
}

}  // namespace

double adaptive_gk15(const Fn1& f, double a, double b, double rel_tol, double abs_floor,
                     int max_intervals) {
  if (b <= a) return 0.0;
  struct Iv {
    double a, b, val, err;
  };
  std::vector<Iv> ivs;
  double v, e;
  gk15(f, a, b, v, e);
  ivs.push_back({a, b, v, e});
  for (int it = 0; it < max_intervals; ++it) {
    double total = 0.0, toterr = 0.0;
    size_t worst = 0;
    for (size_t i = 0; i < ivs.size(); ++i) {
      total += ivs[i].val;
      toterr += ivs[i].err;
      if (ivs[i].err > ivs[worst].err) worst = i;
    }
    if (toterr <= std::max(std::abs(total) * rel_tol, abs_floor)) return total;
    Iv w = ivs[worst];
    const double m = 0.5 * (w.a + w.b);
    Iv l{w.a, m, 0, 0}, r{m, w.b, 0, 0};
    gk15(f, l.a, l.b, l.val, l.err);
    gk15(f, r.a, r.b, r.val, r.err);
    ivs[worst] = l;
    ivs.push_back(r);
  }
  double total = 0.0;
  for (const auto& iv : ivs) total += iv.val;
  return total;
}

void graded_mesh_edges(double t, int cells, double grading, double* edges) {
  for (int j = 0; j <= cells; ++j)
    edges[j] = t * std::pow(static_cast<double>(j) / cells, grading);
  edges[cells] = t;
}

double graded_time_quadrature(const Fn1& F, double t, const QuadSpec& spec,
                              double singular_exponent) {
  if (!(singular_exponent > -1.0)) fail(errc::domain, "singular exponent must exceed -1");
  if (!(t > 0.0)) return 0.0;
  const double grading = spec.grading_exponent > 0.0 ? spec.grading_exponent
                                                     : 2.0 / (1.0 + singular_exponent);
  int J = std::max(spec.points, 16);
  const int max_cells = std::max(1 << 22, J);
  auto eval = [&](int cells) {
    std::vector<double> e(static_cast<size_t>(cells) + 1);
    graded_mesh_edges(t, cells, grading, e.data());
    double acc = 0.0;
    for (int j = 0; j < cells; ++j) acc += F(0.5 * (e[j] + e[j + 1])) * (e[j + 1] - e[j]);
    return acc;
  };
  double prev = eval(J);
  while (2 * J <= max_cells) {
    J *= 2;
    const double cur = eval(J);
    if (std::abs(cur - prev) <= spec.target_rel_err * std::max(std::abs(cur), 1e-300))
      return cur;
    prev = cur;
  }
  fail(errc::no_convergence, "graded quadrature did not stabilize within budget");
}

}  // namespace rosen
