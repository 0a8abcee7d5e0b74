#include "rosen/paths.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace rosen {

size_t PiecewiseLinearPath::cell_index(double t) const {
  auto it = std::upper_bound(times.begin(), times.end(), t);
  size_t i = static_cast<size_t>(it - times.begin());
  if (i > 0) --i;
  return std::min(i, times.size() - 2);
}

double PiecewiseLinearPath::value_at(double t) const {
  if (t <= times.front()) return values.front();
  if (t >= times.back()) return values.back();
  const size_t i = cell_index(t);
  const double w = (t - times[i]) / (times[i + 1] - times[i]);
  return values[i] + w * (values[i + 1] - values[i]);
}

double sup_distance(const PiecewiseLinearPath& P, const PiecewiseLinearPath& Q, double lo,
                    double hi) {
  if (lo < std::max(P.lo(), Q.lo()) - 1e-12 || hi > std::min(P.hi(), Q.hi()) + 1e-12 || hi < lo)
    fail(errc::domain, "sup_distance: interval not covered by both paths");
  double best = std::abs(P.value_at(lo) - Q.value_at(lo));
  auto scan = [&](const std::vector<double>& ts) {
    for (double t : ts) {
      if (t <= lo || t >= hi) continue;
      best = std::max(best, std::abs(P.value_at(t) - Q.value_at(t)));
    }
  };
  scan(P.times);
  scan(Q.times);
  best = std::max(best, std::abs(P.value_at(hi) - Q.value_at(hi)));
  return best;
}

namespace {
constexpr uint64_t kDomB1 = 0x11;
constexpr uint64_t kDomB2 = 0x12;
constexpr uint64_t kDomBext = 0x13;
}  // namespace

DriverBundle simulate_driver_bundle(const Params& p, const MeshSpec& mesh, uint64_t seed) {
  DriverBundle d;
  d.seed = seed;
  const double eps = epsilon_n(p.n, p);
  d.delta = std::min(eps / 8.0, mesh.delta_floor);

  // B1 on [0,T]
  {
    const int m = static_cast<int>(std::ceil(mesh.bm_mesh * p.T));
    if (m < 16) fail(errc::mesh, "B1 grid too coarse");
    CounterStream st(seed, kDomB1);
    d.seed_trace.push_back(st.key());
    const double dt = p.T / m;
    d.B1.times.resize(m + 1);
    d.B1.values.resize(m + 1);
    d.B1.times[0] = 0.0;
    d.B1.values[0] = 0.0;
    const double sd = std::sqrt(dt);
    for (int k = 1; k <= m; ++k) {
      d.B1.times[k] = k * dt;
      d.B1.values[k] = d.B1.values[k - 1] + sd * st.normal(static_cast<uint64_t>(k));
    }
    d.B1.times[m] = p.T;
  }

  // B2 on [a,0], generated backward from B2(0)=0
  {
    const int m = static_cast<int>(std::ceil(mesh.bm_mesh * (-p.a)));
    if (m < 16) fail(errc::mesh, "B2 grid too coarse");
    CounterStream st(seed, kDomB2);
    d.seed_trace.push_back(st.key());
    const double dt = -p.a / m;
    d.B2.times.resize(m + 1);
    d.B2.values.resize(m + 1);
    d.B2.times[m] = 0.0;
    d.B2.values[m] = 0.0;
    const double sd = std::sqrt(dt);
    for (int k = m - 1; k >= 0; --k) {
      d.B2.times[k] = p.a + k * dt;
      d.B2.values[k] = d.B2.values[k + 1] + sd * st.normal(static_cast<uint64_t>(k));
    }
    d.B2.times[0] = p.a;
  }

  // B3 grid in u: uniform knots on [1/a, 0] merged with a geometric ladder
  // down to -delta, so block couplings get aligned edges and the weighted
  // integrals keep relative resolution near the singularity at 0.
  {
    const double u_lo = 1.0 / p.a;  // < 0
    const double span = -u_lo;
    std::set<double> grid;
    const int mu = std::max(16, static_cast<int>(std::ceil(mesh.bm_mesh * span)));
    for (int k = 0; k <= mu; ++k) grid.insert(u_lo + span * k / mu);
    const int decades = static_cast<int>(std::ceil(std::log10(span / d.delta)));
    const int ppd = mesh.b3_points_per_decade;
    const int mg = std::max(16, decades * ppd);
    const double ratio = std::pow(d.delta / span, 1.0 / mg);
    double u = u_lo;
    for (int j = 1; j <= mg; ++j) {
      u = -span * std::pow(ratio, j);
      grid.insert(u);
    }
    grid.insert(-d.delta);
    // drop anything closer to 0 than delta, then append the exact 0 anchor
    std::vector<double> us(grid.begin(), grid.end());
    while (!us.empty() && us.back() > -d.delta * (1.0 - 1e-12)) us.pop_back();
    if (us.size() < 16) fail(errc::mesh, "B3 grid too coarse");

    // extend B backward from B2(a) at x_j = 1/u_j (x decreasing toward -inf)
    CounterStream st(seed, kDomBext);
    d.seed_trace.push_back(st.key());
    const double Ba = d.B2.values.front();
    d.B3.times.reserve(us.size() + 1);
    d.B3.values.reserve(us.size() + 1);
    double x_prev = p.a;
    double B_prev = Ba;
    // walk from the most negative u (= 1/a, x = a) toward 0 (x -> -inf): we
    // need increasing u order in the knot list, and x = 1/u decreases as u
    // increases toward 0, so a single forward pass works.
    for (size_t j = 0; j < us.size(); ++j) {
      const double uj = us[j];
      const double xj = 1.0 / uj;
      double Bx;
      if (j == 0) {
        Bx = Ba;  // u = 1/a exactly
      } else {
        const double dv = x_prev - xj;  // > 0
        Bx = B_prev + std::sqrt(dv) * st.normal(static_cast<uint64_t>(j));
      }
      d.B3.times.push_back(uj);
      d.B3.values.push_back(uj * Bx);
      x_prev = xj;
      B_prev = Bx;
    }
    d.B3.times.push_back(0.0);
    d.B3.values.push_back(0.0);
  }
  return d;
}

}  // namespace rosen
