#include "rosen/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "rosen/quadrature.hpp"
#include "rosen/rng.hpp"

namespace rosen {

namespace {

// int_{max(t0, y v)}^{t1} (u-y1)^q (u-y2)^q du; graded from the singular
// endpoint when the interval starts there, plain GK otherwise.
double kernel_between(double t0, double t1, double y1, double y2, double q) {
  const double lo = std::max(t0, std::max(y1, y2));
  if (lo >= t1) return 0.0;
  auto f = [&](double u) { return std::pow(u - y1, q) * std::pow(u - y2, q); };
  if (lo > std::max(y1, y2) + 1e-12 * std::max(1.0, std::abs(lo))) {
    return adaptive_gk15(f, lo, t1, 1e-9, 1e-14, 2000);
  }
  // singular start: w = (t1-lo) v^{1/(q+1)} flattens the (u-lo)^q factor
  const double W = t1 - lo;
  const double d = lo - std::min(y1, y2);
  const double pw = 1.0 / (q + 1.0);  // q+1 = H/2 > 0
  auto fv = [&](double v) { return std::pow(W * std::pow(v, pw) + d, q); };
  return pw * std::pow(W, q + 1.0) * adaptive_gk15(fv, 0.0, 1.0, 1e-9, 1e-14, 2000);
}

}  // namespace

ChaosGridOracle::ChaosGridOracle(const ChaosGridSpec& spec, const Params& p, double cH,
                                 long max_cells)
    : spec_(spec), p_(p), cH_(cH) {
  if (!(spec.x_min < 0.0)) fail(errc::domain, "x_min must be negative");
  if (!(spec.mesh > 0.0) || spec.mesh > -spec.x_min / 100.0)
    fail(errc::mesh, "chaos grid mesh must be positive and <= |x_min|/100");
  if (spec.x_min > 4.0 * p.a) fail(errc::domain, "x_min must reach at least 4a");
  if (spec.t_grid.empty()) fail(errc::domain, "empty t_grid");
  const double t_max = spec.t_grid.back();
  m_ = static_cast<size_t>(std::ceil((t_max - spec.x_min) / spec.mesh));
  if (static_cast<long>(m_) > max_cells) fail(errc::budget, "chaos grid cell budget exceeded");
  dx_ = (t_max - spec.x_min) / static_cast<double>(m_);
  mids_.resize(m_);
  for (size_t i = 0; i < m_; ++i) mids_[i] = spec.x_min + (i + 0.5) * dx_;

  const double q = p.H / 2.0 - 1.0;
  const size_t pairs = m_ * (m_ - 1) / 2;
  G_.assign(spec.t_grid.size(), std::vector<double>(pairs, 0.0));
  for (size_t i = 0, idx = 0; i < m_; ++i) {
    for (size_t j = i + 1; j < m_; ++j, ++idx) {
      double t_prev = std::max(mids_[i], mids_[j]);
      double acc = 0.0;
      for (size_t k = 0; k < spec.t_grid.size(); ++k) {
        const double t = spec.t_grid[k];
        if (t > t_prev) {
          acc += kernel_between(t_prev, t, mids_[i], mids_[j], q);
          t_prev = t;
        }
        G_[k][idx] = acc;
      }
    }
  }
}

std::vector<double> ChaosGridOracle::sample(uint64_t seed, uint64_t rep) const {
  CounterStream st(seed, 0x0c1ae5ULL, rep);
  std::vector<double> v(m_);
  const double sd = std::sqrt(dx_);
  for (size_t i = 0; i < m_; ++i) v[i] = sd * st.normal(i);
  std::vector<double> out(spec_.t_grid.size(), 0.0);
  for (size_t k = 0; k < out.size(); ++k) {
    const auto& G = G_[k];
    double acc = 0.0;
    size_t idx = 0;
    for (size_t i = 0; i < m_; ++i) {
      double row = 0.0;
      const double vi = v[i];
      for (size_t j = i + 1; j < m_; ++j, ++idx) row += G[idx] * v[j];
      acc += vi * row;
    }
    out[k] = cH_ * 2.0 * acc;  // i != j: both orders of the symmetric kernel
  }
  return out;
}

double ChaosGridOracle::discrete_var(size_t t_index) const {
  const auto& G = G_[t_index];
  double s2 = 0.0;
  for (double g : G) s2 += g * g;
  // E X^2 = cH^2 sum_{i!=j} (g_ij^2 + g_ij g_ji) dx^2 with g symmetric
  return 2.0 * cH_ * cH_ * (2.0 * s2) * dx_ * dx_;
}

namespace {
std::map<std::string, std::shared_ptr<ChaosGridOracle>> g_oracles;
std::mutex g_oracle_mu;

std::string oracle_key(const ChaosGridSpec& spec, const Params& p) {
  std::string k = std::to_string(spec.x_min) + "|" + std::to_string(spec.mesh) + "|" +
                  std::to_string(p.H);
  for (double t : spec.t_grid) k += "," + std::to_string(t);
  return k;
}
}  // namespace

std::vector<double> simulate_chaos_grid(const ChaosGridSpec& spec, const Params& p, double cH,
                                        uint64_t seed, uint64_t rep) {
  std::shared_ptr<ChaosGridOracle> oc;
  {
    std::lock_guard<std::mutex> lk(g_oracle_mu);
    auto it = g_oracles.find(oracle_key(spec, p));
    if (it != g_oracles.end()) oc = it->second;
  }
  if (!oc) {
    oc = std::make_shared<ChaosGridOracle>(spec, p, cH);
    std::lock_guard<std::mutex> lk(g_oracle_mu);
    g_oracles.emplace(oracle_key(spec, p), oc);
  }
  return oc->sample(seed, rep);
}

double grid_double_sum(const std::function<double(double, double)>& kernel, const GridPath& B,
                       double lo, double hi) {
  if (lo < B.lo() - 1e-12 || hi > B.hi() + 1e-12) fail(errc::domain, "region outside grid");
  std::vector<double> mids, incs;
  for (size_t i = 0; i + 1 < B.times.size(); ++i) {
    if (B.times[i] < lo - 1e-15 || B.times[i + 1] > hi + 1e-15) continue;
    mids.push_back(0.5 * (B.times[i] + B.times[i + 1]));
    incs.push_back(B.values[i + 1] - B.values[i]);
  }
  const size_t m = mids.size();
  if (m * m > 100'000'000ULL) fail(errc::budget, "grid_double_sum cell budget exceeded");
  double acc = 0.0;
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j)
      acc += (kernel(mids[i], mids[j]) + kernel(mids[j], mids[i])) * incs[i] * incs[j];
  return acc;
}

RemainderSummary estimate_remainder(double t, double eps, const Params& p, double cH, int reps,
                                    uint64_t seed) {
  if (!(eps > 0.0 && eps < t)) fail(errc::domain, "need 0 < eps < t");
  const double q = p.H / 2.0 - 1.0;
  const double mesh = std::max(std::min(eps / 3.0, t / 48.0), t / 512.0);
  const size_t m = static_cast<size_t>(std::ceil(t / mesh));
  const double dx = t / static_cast<double>(m);
  std::vector<double> mids(m);
  for (size_t i = 0; i < m; ++i) mids[i] = (i + 0.5) * dx;
  // pair weights: int_{xv}^{(xv+eps)^t} (s-x1)^q (s-x2)^q ds
  std::vector<double> Wp(m * (m - 1) / 2);
  for (size_t i = 0, idx = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j, ++idx) {
      const double xv = std::max(mids[i], mids[j]);
      Wp[idx] = kernel_between(xv, std::min(xv + eps, t), mids[i], mids[j], q);
    }
  std::vector<double> absG(static_cast<size_t>(reps));
  const double sd = std::sqrt(dx);
  for (int r = 0; r < reps; ++r) {
    CounterStream st(seed, 0x6e5dULL, static_cast<uint64_t>(r));
    std::vector<double> v(m);
    for (size_t i = 0; i < m; ++i) v[i] = sd * st.normal(i);
    double acc = 0.0;
    size_t idx = 0;
    for (size_t i = 0; i < m; ++i) {
      double row = 0.0;
      for (size_t j = i + 1; j < m; ++j, ++idx) row += Wp[idx] * v[j];
      acc += v[i] * row;
    }
    absG[static_cast<size_t>(r)] = std::abs(cH * 2.0 * acc);
  }
  std::sort(absG.begin(), absG.end());
  RemainderSummary s;
  s.reps = reps;
  double mean = 0.0;
  for (double g : absG) mean += g;
  mean /= reps;
  double var = 0.0;
  for (double g : absG) var += (g - mean) * (g - mean);
  s.mean_abs = mean;
  s.std_abs = std::sqrt(var / std::max(1, reps - 1));
  auto qtl = [&](double u) { return absG[static_cast<size_t>(u * (reps - 1))]; };
  s.q05 = qtl(0.05);
  s.q25 = qtl(0.25);
  s.q50 = qtl(0.50);
  s.q75 = qtl(0.75);
  s.q95 = qtl(0.95);
  return s;
}

namespace {
std::map<std::string, double> g_rem_cache;
std::mutex g_rem_mu;
}  // namespace

double cached_remainder_estimate(const Params& p, double t, double eps, double cH) {
  const std::string key = std::to_string(p.H) + "|" + std::to_string(t) + "|" +
                          std::to_string(eps);
  std::lock_guard<std::mutex> lk(g_rem_mu);
  auto it = g_rem_cache.find(key);
  if (it == g_rem_cache.end()) {
    const RemainderSummary s = estimate_remainder(t, eps, p, cH, 64, 0x4e6dULL);
    it = g_rem_cache.emplace(key, s.mean_abs).first;
  }
  return it->second;
}

}  // namespace rosen
