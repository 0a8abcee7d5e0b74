#include "rosen/rosenblatt.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "rosen/oracle.hpp"

namespace rosen {

TimeMesh build_time_mesh(const std::vector<double>& t_grid, const Params& p) {
  if (t_grid.size() < 2 || t_grid.front() != 0.0)
    fail(errc::domain, "t_grid must start at 0 and hold at least two points");
  for (size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1])) fail(errc::domain, "t_grid must increase");
  TimeMesh m;
  m.t_grid = t_grid;
  const size_t cells_out = t_grid.size() - 1;
  const int per_cell =
      std::max<int>(4, static_cast<int>(p.mesh.time_quad_points / cells_out));
  const double grading = 2.0 / p.H;
  m.edges.push_back(0.0);
  m.out_edge.push_back(0);
  for (size_t k = 0; k < cells_out; ++k) {
    const double t0 = t_grid[k], t1 = t_grid[k + 1];
    const int J = (k == 0) ? 3 * per_cell : per_cell;
    for (int j = 1; j <= J; ++j) {
      double e;
      if (k == 0) {
        e = t1 * std::pow(static_cast<double>(j) / J, grading);
      } else {
        e = t0 + (t1 - t0) * j / J;
      }
      m.edges.push_back(j == J ? t1 : e);
    }
    m.out_edge.push_back(m.edges.size() - 1);
  }
  m.mid.resize(m.edges.size() - 1);
  m.w.resize(m.edges.size() - 1);
  for (size_t j = 0; j + 1 < m.edges.size(); ++j) {
    m.mid[j] = 0.5 * (m.edges[j] + m.edges[j + 1]);
    m.w[j] = m.edges[j + 1] - m.edges[j];
  }
  return m;
}

double eval_Y1_approx(double s, const TransportPath& Z2, const TransportPath& Z3,
                      const Params& p, double eps_n) {
  const double t1 = kernel_f(s, p.a, p) * Z2.value_at(p.a);
  const double t2 = -riemann_weighted_pl(s, Z3, 1.0 / p.a, -eps_n, p);
  const double t3 = stieltjes_pl(s, 0.0, Z2, p.a, -eps_n, p);
  const double t4 = stieltjes_pl(s, eps_n, Z2, -eps_n, 0.0, p);
  return t1 + t2 + t3 + t4;
}

double eval_Y1_reference(double s, const DriverBundle& D, const Params& p, double eps_n) {
  const double t1 = kernel_f(s, p.a, p) * D.B2.value_at(p.a);
  const double t2 = -riemann_weighted_pl(s, D.B3, 1.0 / p.a, -eps_n, p);
  const double t2b = -riemann_weighted_pl(s, D.B3, -eps_n, -D.delta, p);
  const double t3 = wiener_grid_integral(s, 0.0, D.B2, p.a, -eps_n, p);
  const double t5 = wiener_grid_integral(s, 0.0, D.B2, -eps_n, 0.0, p) -
                    wiener_grid_integral(s, eps_n, D.B2, -eps_n, 0.0, p);
  const double t6 = wiener_grid_integral(s, eps_n, D.B2, -eps_n, 0.0, p);
  return t1 + t2 + t2b + t3 + t5 + t6;
}

double eval_Y3(double s, const TransportPath& Z1, const Params& p, double eps, double lower,
               bool primed) {
  const double shift = primed ? 0.0 : eps;
  const double upper = primed ? s - eps : s;
  if (upper <= lower) return 0.0;
  return stieltjes_pl(s, shift, Z1, lower, upper, p);
}

double eval_Y3(double s, const GridPath& B1, const Params& p, double eps, double lower,
               bool primed) {
  const double shift = primed ? 0.0 : eps;
  const double upper = primed ? s - eps : s;
  if (upper <= lower) return 0.0;
  return wiener_grid_integral(s, shift, B1, lower, upper, p);
}

namespace {

// int_{x0}^{x1} (c-x)^{e} dx for e != -1
double ipow(double c, double x0, double x1, double e) {
  return (std::pow(c - x0, e + 1.0) - std::pow(c - x1, e + 1.0)) / (e + 1.0);
}

}  // namespace

double var_Y1_approx_gaussian(double s, const Params& p, double eps_n) {
  const double H = p.H, e = eps_n, K = 1.0 / eps_n;
  const double atom2 = K * std::pow(s + K, H - 2.0);
  const double mid = ipow(s, -K, -e, H - 2.0);
  const double last = ipow(s + e, -e, 0.0, H - 2.0);
  const double cross = -2.0 * std::pow(s + K, H / 2.0 - 1.0) *
                       (ipow(s, -K, -e, H / 2.0 - 1.0) + ipow(s + e, -e, 0.0, H / 2.0 - 1.0));
  return atom2 + mid + last + cross;
}

double var_Y1_reference_gaussian(double s, const Params& p, double delta) {
  const double H = p.H, K = 1.0 / delta;
  const double atom2 = K * std::pow(s + K, H - 2.0);
  const double mid = ipow(s, -K, 0.0, H - 2.0);
  const double cross = -2.0 * std::pow(s + K, H / 2.0 - 1.0) * ipow(s, -K, 0.0, H / 2.0 - 1.0);
  return atom2 + mid + cross;
}

double var_Y3_gaussian(double s, const Params& p, double eps) {
  if (s <= 0.0) return 0.0;
  return ipow(s + eps, 0.0, s, p.H - 2.0);
}

ComponentPaths build_components(const TimeMesh& mesh, const TransportPath& Z1,
                                const TransportPath& Z2, const TransportPath& Z3, const Params& p,
                                double cH) {
  const double eps = epsilon_n(p.n, p);
  const size_t J = mesh.mid.size();
  std::vector<double> Y1(J), Y3(J), V(J);
  for (size_t j = 0; j < J; ++j) {
    const double s = mesh.mid[j];
    Y1[j] = eval_Y1_approx(s, Z2, Z3, p, eps);
    Y3[j] = eval_Y3(s, Z1, p, eps);
    V[j] = var_Y1_approx_gaussian(s, p, eps) + var_Y3_gaussian(s, p, eps);
  }
  ComponentPaths cp;
  const size_t G = mesh.t_grid.size();
  cp.X1.assign(G, 0.0);
  cp.X2.assign(G, 0.0);
  cp.X3.assign(G, 0.0);
  cp.X.assign(G, 0.0);
  cp.mu.assign(G, 0.0);
  double a1 = 0, a2 = 0, a3 = 0, am = 0;
  size_t j = 0;
  for (size_t k = 1; k < G; ++k) {
    while (j < J && mesh.edges[j + 1] <= mesh.t_grid[k] + 1e-15) {
      a1 += Y1[j] * Y1[j] * mesh.w[j];
      a2 += Y1[j] * Y3[j] * mesh.w[j];
      a3 += Y3[j] * Y3[j] * mesh.w[j];
      am += V[j] * mesh.w[j];
      ++j;
    }
    cp.X1[k] = cH * a1;
    cp.X2[k] = cH * a2;
    cp.X3[k] = cH * a3;
    cp.mu[k] = cH * am;
    cp.X[k] = cp.X1[k] + 2.0 * cp.X2[k] + cp.X3[k];
  }
  return cp;
}

ReferencePaths build_reference(const TimeMesh& mesh, const DriverBundle& D, const Params& p,
                               double eps_ref, double cH) {
  const double eps = epsilon_n(p.n, p);
  if (eps_ref > eps / 8.0 + 1e-15) fail(errc::domain, "eps_ref must be <= eps_n/8");
  const size_t J = mesh.mid.size();
  std::vector<double> Y1(J), Y3(J), Yp(J), V1(J), V3(J);
  for (size_t j = 0; j < J; ++j) {
    const double s = mesh.mid[j];
    Y1[j] = eval_Y1_reference(s, D, p, eps);
    Y3[j] = eval_Y3(s, D.B1, p, eps_ref);
    Yp[j] = eval_Y3(s, D.B1, p, eps_ref, 0.0, /*primed=*/true);
    V1[j] = var_Y1_reference_gaussian(s, p, D.delta);
    V3[j] = var_Y3_gaussian(s, p, eps_ref);
  }
  ReferencePaths rp;
  const size_t G = mesh.t_grid.size();
  rp.Xref.assign(G, 0.0);
  rp.mu_ref.assign(G, 0.0);
  for (size_t k = 1; k < G; ++k) {
    const double t = mesh.t_grid[k];
    double acc = 0.0, mu = 0.0;
    for (size_t j = 0; j < J && mesh.edges[j + 1] <= t + 1e-15; ++j) {
      const double s = mesh.mid[j];
      double cell = Y1[j] * Y1[j] + 2.0 * Y1[j] * Yp[j];
      double mcell = V1[j];
      if (s <= t - eps_ref) {  // F^n integrates (Y3)^2 only up to t - eps
        cell += Y3[j] * Y3[j];
        mcell += V3[j];
      }
      acc += cell * mesh.w[j];
      mu += mcell * mesh.w[j];
    }
    rp.mu_ref[k] = cH * mu;
    rp.Xref[k] = cH * acc - rp.mu_ref[k];
  }
  return rp;
}

namespace {

std::map<long long, KernelConstants> g_const_cache;
std::mutex g_const_mu;

constexpr uint64_t kDomZ1 = 0x21, kDomZ2 = 0x22, kDomZ3 = 0x23;

}  // namespace

const KernelConstants& cached_constants(const Params& p) {
  const long long key = static_cast<long long>(p.H * 1e12);
  std::lock_guard<std::mutex> lk(g_const_mu);
  auto it = g_const_cache.find(key);
  if (it == g_const_cache.end()) it = g_const_cache.emplace(key, normalizing_constant(p)).first;
  return it->second;
}

RosenblattRun assemble_run(const Params& p0, uint64_t seed, const AssembleOptions& opt) {
  const Params p = validate_params(p0);
  RosenblattRun run;
  run.params = p;
  run.seed = seed;
  run.coupled = opt.coupled;
  run.eps_n = epsilon_n(p.n, p);
  run.alpha = alpha_n(std::max(p.n, 2), p, false);
  run.alpha_hat = alpha_n(std::max(p.n, 2), p, true);
  const KernelConstants& kc = cached_constants(p);
  run.cH = kc.cH;

  DriverBundle D = simulate_driver_bundle(p, p.mesh, seed);
  run.delta = D.delta;

  TransportPath Z1, Z2, Z3;
  if (opt.coupled) {
    Z1 = couple_transport(D.B1, p.n, 0.0, CounterStream(seed, kDomZ1), false);
    Z2 = couple_transport(D.B2, p.n, 0.0, CounterStream(seed, kDomZ2), true);
    Z3 = couple_transport(D.B3, p.n, 0.0, CounterStream(seed, kDomZ3), true);
  } else {
    Z1 = simulate_transport(p.n, 0.0, p.T, CounterStream(seed, kDomZ1), false);
    Z2 = simulate_transport(p.n, p.a, 0.0, CounterStream(seed, kDomZ2), true);
    Z3 = simulate_transport(p.n, 1.0 / p.a, 0.0, CounterStream(seed, kDomZ3), true);
  }

  run.t_grid.resize(p.mesh.output_grid_size);
  for (int k = 0; k < p.mesh.output_grid_size; ++k)
    run.t_grid[k] = p.T * k / (p.mesh.output_grid_size - 1);
  const TimeMesh mesh = build_time_mesh(run.t_grid, p);

  ComponentPaths cp = build_components(mesh, Z1, Z2, Z3, p, kc.cH);
  run.X1 = std::move(cp.X1);
  run.X2 = std::move(cp.X2);
  run.X3 = std::move(cp.X3);
  run.X = std::move(cp.X);
  run.mu = std::move(cp.mu);

  // pathwise bound on the dropped [-delta,0] piece of the weighted integral:
  // |B3| <= Y_emp |u|^{1/2-gt} near 0 gives Y_emp (1-H/2)/(1/2-H/2-gt) delta^{1/2-H/2-gt}
  {
    const double gt = 0.5 * (0.5 - p.H / 2.0);
    double Yemp = 0.0;
    const auto& B3 = D.B3;
    for (size_t i = 0; i + 1 < B3.times.size(); ++i) {
      const double u = B3.times[i];
      if (u >= -1e-2 && u < 0.0)
        Yemp = std::max(Yemp, std::abs(B3.values[i]) / std::pow(-u, 0.5 - gt));
    }
    const double expo = 0.5 - p.H / 2.0 - gt;
    run.b3_tail_bound = Yemp * (1.0 - p.H / 2.0) / expo * std::pow(run.delta, expo);
  }

  if (opt.with_reference) {
    run.eps_ref = run.eps_n * opt.eps_ref_factor;
    ReferencePaths rp = build_reference(mesh, D, p, run.eps_ref, kc.cH);
    run.Xref = std::move(rp.Xref);
    run.mu_ref = std::move(rp.mu_ref);
    if (opt.estimate_remainder)
      run.remainder_estimate = cached_remainder_estimate(p, p.T, run.eps_ref, kc.cH);
  }
  return run;
}

}  // namespace rosen
