#include "rosen/integrate.hpp"

#include <algorithm>
#include <cmath>

namespace rosen {

namespace {

// clip [x0,x1] against the path domain and walk cells
struct CellWalk {
  const PiecewiseLinearPath& P;
  size_t i;     // current cell
  double x0, x1;
  CellWalk(const PiecewiseLinearPath& P_, double a, double b) : P(P_), x0(a), x1(b) {
    if (a < P.lo() - 1e-12 || b > P.hi() + 1e-12 || a > b)
      fail(errc::domain, "integration interval not covered by the path");
    x0 = std::max(a, P.lo());
    x1 = std::min(b, P.hi());
    i = P.cell_index(x0);
  }
};

}  // namespace

double stieltjes_pl(double s, double shift, const PiecewiseLinearPath& Z, double x0, double x1,
                    const Params& p) {
  if (x1 > s + shift + 1e-14 * std::max(1.0, std::abs(s)))
    fail(errc::domain, "stieltjes_pl: upper limit beyond the kernel singularity");
  if (x0 >= x1) return 0.0;
  CellWalk w(Z, x0, x1);
  double acc = 0.0;
  for (size_t i = w.i; i + 1 < Z.times.size() && Z.times[i] < w.x1; ++i) {
    const double lo = std::max(Z.times[i], w.x0);
    const double hi = std::min(Z.times[i + 1], w.x1);
    if (hi <= lo) continue;
    const double slope = (Z.values[i + 1] - Z.values[i]) / (Z.times[i + 1] - Z.times[i]);
    if (slope != 0.0) acc += slope * segment_integral_f(s, shift, lo, std::min(hi, s + shift), p);
  }
  return acc;
}

double wiener_grid_integral(double s, double shift, const GridPath& B, double x0, double x1,
                            const Params& p) {
  const double c = s + shift;
  if (x1 > c + 1e-14 * std::max(1.0, std::abs(c)))
    fail(errc::domain, "wiener_grid_integral: upper limit beyond the kernel singularity");
  if (x0 >= x1) return 0.0;
  CellWalk w(B, x0, x1);
  const double h2 = p.H / 2.0;
  double acc = 0.0;
  for (size_t i = w.i; i + 1 < B.times.size() && B.times[i] < w.x1; ++i) {
    const double lo = std::max(B.times[i], w.x0);
    const double hi = std::min({B.times[i + 1], w.x1, c});
    if (hi <= lo) continue;
    const double slope = (B.values[i + 1] - B.values[i]) / (B.times[i + 1] - B.times[i]);
    const double dB = slope * (hi - lo);
    const double len = hi - lo;
    const double mid = 0.5 * (lo + hi);
    double fval;
    if (c - mid < len) {
      // singular end: exact cell average instead of the midpoint value
      fval = segment_integral_f(s, shift, lo, hi, p) / len;
    } else {
      fval = std::pow(c - mid, h2 - 1.0);
    }
    acc += fval * dB;
  }
  return acc;
}

double riemann_weighted_pl(double s, const PiecewiseLinearPath& P, double u0, double u1,
                           const Params& p) {
  if (u1 > 0.0) fail(errc::domain, "riemann_weighted_pl: u1 must be <= 0");
  if (u0 >= u1) return 0.0;
  CellWalk w(P, u0, u1);
  double acc = 0.0;
  for (size_t i = w.i; i + 1 < P.times.size() && P.times[i] < w.x1; ++i) {
    const double lo = std::max(P.times[i], w.x0);
    const double hi = std::min(P.times[i + 1], w.x1);
    if (hi <= lo) continue;
    const double m = (P.values[i + 1] - P.values[i]) / (P.times[i + 1] - P.times[i]);
    // intercept from the right knot: exact 0 when the path ends at (0,0)
    const double cc = P.values[i + 1] - m * P.times[i + 1];
    double piece = 0.0;
    if (cc != 0.0) {
      piece = segment_integral_weighted(s, lo, hi, cc, m, p);
    } else if (m != 0.0) {
      // pure-slope segment: only the (c s + m) term survives; at hi = 0 the
      // image point 1/hi is -inf and the kernel factor vanishes there
      const double h2 = p.H / 2.0;
      const double t1 = std::pow(s - 1.0 / lo, h2 - 1.0);
      const double t2 = (hi == 0.0) ? 0.0 : std::pow(s - 1.0 / hi, h2 - 1.0);
      piece = m * (t1 - t2);
    }
    acc += piece;
  }
  return acc;
}

}  // namespace rosen
