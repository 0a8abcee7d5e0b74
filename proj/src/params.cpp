#include "rosen/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rosen {

std::pair<double, double> beta_range(double H) {
  if (!(H > 0.5 && H < 1.0)) fail(errc::hurst, "H must lie in (1/2,1)");
  const double lo1 = (1.0 - H / 2.0) / (3.0 - 2.0 * H);
  const double lo2 = (2.0 - H) / (2.0 + 2.0 * H);
  return {std::max(lo1, lo2), 0.5};
}

Params validate_params(const Params& raw) {
  std::ostringstream msg;
  if (!(raw.H > 0.5 && raw.H < 1.0)) {
    msg << "H=" << raw.H << " outside (0.5,1)";
    fail(errc::hurst, msg.str());
  }
  const auto [lo, hi] = beta_range(raw.H);
  if (!(raw.beta > lo && raw.beta < hi)) {
    msg << "beta=" << raw.beta << " outside (" << lo << "," << hi << ") for H=" << raw.H;
    fail(errc::beta, msg.str());
  }
  if (!(raw.gamma > 0.0 && raw.gamma < raw.beta && raw.beta + raw.gamma < 0.5)) {
    msg << "gamma=" << raw.gamma << " must satisfy 0<gamma<beta and beta+gamma<1/2";
    fail(errc::gamma, msg.str());
  }
  if (!(raw.a < 0.0)) fail(errc::domain, "a must be negative");
  if (!(raw.T > 0.0)) fail(errc::domain, "T must be positive");
  if (raw.n < 1) fail(errc::n_too_small, "n must be >= 1");
  if (raw.mesh.bm_mesh < 16 || raw.mesh.output_grid_size < 2 ||
      raw.mesh.time_quad_points < 16 || raw.mesh.b3_points_per_decade < 4)
    fail(errc::mesh, "mesh parameters too coarse");
  if (!(raw.mesh.delta_floor > 0.0)) fail(errc::mesh, "delta_floor must be positive");
  return raw;
}

double epsilon_n(int n, const Params& p) {
  return std::pow(static_cast<double>(n), -p.beta / (1.0 - p.H / 2.0));
}

double alpha_n(int n, const Params& p, bool hat) {
  if (n < 2) fail(errc::n_too_small, "alpha_n needs n >= 2");
  const double expo = 0.5 - p.beta - (hat ? p.gamma : 0.0);
  const double ln = std::log(static_cast<double>(n));
  return std::pow(static_cast<double>(n), -expo) * std::pow(ln, 2.5);
}

}  // namespace rosen
