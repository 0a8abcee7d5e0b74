#include "rosen/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace rosen {

double fbm_covariance(double t, double s, double H) {
  if (t < 0.0 || s < 0.0) fail(errc::domain, "fbm_covariance needs t,s >= 0");
  return 0.5 * (std::pow(t, 2.0 * H) + std::pow(s, 2.0 * H) - std::pow(std::abs(t - s), 2.0 * H));
}

double kernel_f(double s, double x, const Params& p, bool deriv) {
  if (!(x < s)) fail(errc::singular, "kernel_f requires x < s");
  const double h2 = p.H / 2.0;
  if (deriv) return (1.0 - h2) * std::pow(s - x, h2 - 2.0);
  return std::pow(s - x, h2 - 1.0);
}

double segment_integral_f(double s, double shift, double x0, double x1, const Params& p) {
  const double c = s + shift;
  if (x0 > x1 || x1 > c) fail(errc::domain, "segment_integral_f needs x0 <= x1 <= s+shift");
  if (x0 == x1) return 0.0;
  const double h2 = p.H / 2.0;
  return (2.0 / p.H) * (std::pow(c - x0, h2) - std::pow(c - x1, h2));
}

double segment_integral_weighted(double s, double u0, double u1, double c, double m,
                                 const Params& p) {
  if (u0 > u1 || u1 >= 0.0) fail(errc::domain, "segment_integral_weighted needs u0 <= u1 < 0");
  if (!(s > 0.0)) fail(errc::domain, "segment_integral_weighted needs s > 0");
  if (u0 == u1 || (c == 0.0 && m == 0.0)) return 0.0;
  // x = 1/u maps [u0,u1] to [x1,x0] with x1 = 1/u1 <= x0 = 1/u0 < 0
  const double x0 = 1.0 / u0, x1 = 1.0 / u1;
  const double h2 = p.H / 2.0;
  const double t1 = -c * (1.0 - h2) * (2.0 / p.H) * (std::pow(s - x1, h2) - std::pow(s - x0, h2));
  const double t2 = (c * s + m) * (std::pow(s - x0, h2 - 1.0) - std::pow(s - x1, h2 - 1.0));
  return t1 + t2;
}

double rosenblatt_kernel_g(double t, double y1, double y2, const Params& p) {
  if (y1 == y2) fail(errc::diagonal, "g_t diverges on the diagonal");
  const double lo = std::max(y1, y2);
  if (lo >= t) return 0.0;
  const double q = p.H / 2.0 - 1.0;
  const double W = t - lo;
  const double d = lo - std::min(y1, y2);  // > 0 off the diagonal
  // w = u - lo = W v^{2/H} flattens the w^q factor exactly
  const double pw = 2.0 / p.H;
  auto f = [&](double v) { return std::pow(W * std::pow(v, pw) + d, q); };
  const double base = adaptive_simpson(f, 0.0, 1.0, 1e-9);
  return (2.0 / p.H) * std::pow(W, p.H / 2.0) * base;
}

double rosenblatt_kernel_g_alt(double t, double y1, double y2, const Params& p) {
  if (y1 == y2) fail(errc::diagonal, "g_t diverges on the diagonal");
  const double lo = std::max(y1, y2);
  if (lo >= t) return 0.0;
  const double q = p.H / 2.0 - 1.0;
  auto f = [&](double u) { return std::pow(u - y1, q) * std::pow(u - y2, q); };
  // geometric panels toward the integrable endpoint, GK15 inside each
  const double W = t - lo;
  double acc = 0.0;
  double hi = t;
  double w = W;
  while (w > 1e-14 * W) {
    const double low = lo + w * 0.25;
    acc += adaptive_gk15(f, low, hi, 1e-10, 1e-300, 4000);
    hi = low;
    w *= 0.25;
  }
  // remaining sliver [lo, lo+w]: integrand ~ (u-lo)^q d^q
  const double d = lo - std::min(y1, y2);
  acc += std::pow(d, q) * std::pow(w, q + 1.0) / (q + 1.0);
  return acc;
}

namespace {

// psi(y) = int_0^1 (u-y)_+^{H/2-1} du
double psi_fn(double y, double H) {
  const double h2 = H / 2.0;
  const double b = std::pow(std::max(1.0 - y, 0.0), h2);
  const double a = y < 0.0 ? std::pow(-y, h2) : 0.0;
  return (2.0 / H) * (b - a);
}

// S_inf = int_{-inf}^{1} psi(y)^2 dy, with analytic tail beyond -Y
double psi_norm2(double H) {
  const double Y = 1e8;
  auto f = [&](double w) {  // y = 1 - e^w
    const double y = 1.0 - std::exp(w);
    const double ps = psi_fn(y, H);
    return ps * ps * std::exp(w);
  };
  const double body = adaptive_gk15(f, std::log(1e-8), std::log(1.0 + Y), 1e-7, 1e-12, 60000);
  const double head = adaptive_gk15([&](double y) { const double ps = psi_fn(y, H); return ps * ps; },
                                    1.0 - 1e-8, 1.0, 1e-7, 1e-14, 1000);
  const double tail = std::pow(Y, H - 1.0) / (1.0 - H);
  return body + head + tail;
}

}  // namespace

KernelConstants normalizing_constant(const Params& p, long quad_budget, double horizon) {
  const double H = p.H;
  const double q = H / 2.0 - 1.0;
  const double t = horizon;
  long evals = 0;

  auto g_val = [&](double y1, double y2) {
    evals += 40;  // amortized cost of one kernel quadrature
    if (evals > quad_budget) fail(errc::quad_budget, "normalizing_constant: budget exhausted");
    return rosenblatt_kernel_g(t, y1, y2, p);
  };

  // inner(y1) = int_0^inf g(y1, y1-xi)^2 dxi, singular ~ xi^{2H-2} at 0 and
  // decaying ~ xi^{H-2} at infinity
  auto inner = [&](double y1) {
    const double xi0 = std::max(1e-3 * t, 0.01 * (t - y1));
    const double flat = 1.0 / (2.0 * H - 1.0);
    auto near = [&](double v) {  // xi = xi0 v^{1/(2H-1)}
      const double xi = xi0 * std::pow(v, flat);
      const double gv = g_val(y1, y1 - xi);
      return gv * gv * xi0 * flat * std::pow(v, flat - 1.0);
    };
    double acc = adaptive_gk15(near, 0.0, 1.0, 3e-6, 1e-14, 3000);
    const double psi1 = (2.0 / H) * std::pow(t - y1, H / 2.0);
    // far bound: g(y1,y1-xi) <= xi^{H/2-1} psi1(y1); pick Xi so the tail is negligible
    double Xi = std::pow(psi1 * psi1 / ((1.0 - H) * 1e-7 * std::max(acc, 1e-12)), 1.0 / (1.0 - H));
    Xi = std::min(std::max(Xi, 4.0 * xi0), 1e30);
    auto far = [&](double w) {  // xi = e^w
      const double xi = std::exp(w);
      const double gv = g_val(y1, y1 - xi);
      return gv * gv * xi;
    };
    acc += adaptive_gk15(far, std::log(xi0), std::log(Xi), 3e-6, 1e-14, 6000);
    acc += psi1 * psi1 * std::pow(Xi, H - 1.0) / (1.0 - H);
    (void)q;
    return acc;
  };

  // pilot pass to size the truncation point M so that the analytic tail bound
  // stays below 1e-5 of the whole integral
  const double S_inf = psi_norm2(H);
  auto outer_integral = [&](double M, double tol) {
    auto f = [&](double w) {  // y1 = t - e^w
      const double y1 = t - std::exp(w);
      return inner(y1) * std::exp(w);
    };
    const double body =
        adaptive_gk15(f, std::log(1e-7 * t), std::log(t + M), tol, 1e-12, 60000);
    const double head = adaptive_gk15(inner, t - 1e-7 * t, t, 1e-4, 1e-14, 200);
    return 2.0 * (body + head);  // symmetry in (y1,y2)
  };

  const double I_pilot = outer_integral(1e4, 3e-4);
  double M = std::pow(2.0 * S_inf / ((1.0 - H) * 1e-5 * I_pilot), 1.0 / (1.0 - H));
  M = std::min(std::max(M, 1e4), 1e60);
  const double tail = 2.0 * std::pow(M, H - 1.0) / (1.0 - H) * S_inf;

  const double outer_tol = 2e-5;
  const double I = outer_integral(M, outer_tol) + 0.5 * tail;

  KernelConstants kc;
  kc.g_norm2 = I;
  kc.trunc_M = M;
  kc.tail_bound = tail;
  kc.cH = 1.0 / std::sqrt(2.0 * I);
  // half of: tail slack + quadrature tolerances (cH scales as I^{-1/2})
  kc.cH_rel_err = 0.5 * (tail / I + 3.0 * outer_tol);
  return kc;
}

}  // namespace rosen
