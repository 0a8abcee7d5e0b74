#include "rosen/stats.hpp"

#include <algorithm>
#include <cmath>

#include "rosen/errors.hpp"
#include "rosen/rng.hpp"

namespace rosen {

double mean(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

double variance(std::span<const double> x) {
  const double m = mean(x);
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return s / static_cast<double>(x.size() - 1);
}

double std_err_mean(std::span<const double> x) {
  return std::sqrt(variance(x) / static_cast<double>(x.size()));
}

double std_err_variance(std::span<const double> x) {
  const double m = mean(x);
  const double n = static_cast<double>(x.size());
  double m2 = 0.0, m4 = 0.0;
  for (double v : x) {
    const double d = (v - m) * (v - m);
    m2 += d;
    m4 += d * d;
  }
  m2 /= n;
  m4 /= n;
  return std::sqrt(std::max(m4 - m2 * m2, 0.0) / n);
}

double skewness(std::span<const double> x) {
  const double m = mean(x);
  const double n = static_cast<double>(x.size());
  double s2 = 0.0, s3 = 0.0;
  for (double v : x) {
    const double d = v - m;
    s2 += d * d;
    s3 += d * d * d;
  }
  s2 /= n;
  s3 /= n;
  return s3 / std::pow(s2, 1.5);
}

double quantile(std::vector<double> x, double q) {
  if (x.empty()) fail(errc::input, "quantile of empty sample");
  std::sort(x.begin(), x.end());
  const double pos = q * (x.size() - 1);
  const size_t i = std::min(static_cast<size_t>(pos), x.size() - 2);
  const double w = pos - static_cast<double>(i);
  if (x.size() == 1) return x[0];
  return x[i] * (1.0 - w) + x[i + 1] * w;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) fail(errc::input, "pearson: bad sizes");
  const double mx = mean(x), my = mean(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b, double alpha) {
  if (a.size() < 50 || b.size() < 50) fail(errc::input, "ks_two_sample needs >= 50 per sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  KsResult r;
  r.statistic = d;
  r.critical = std::sqrt(-std::log(alpha / 2.0) / 2.0) * std::sqrt((na + nb) / (na * nb));
  r.reject = d > r.critical;
  return r;
}

KsResult ks_exponential(std::vector<double> x, double rate, double alpha) {
  if (x.size() < 50) fail(errc::input, "ks_exponential needs >= 50 samples");
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double F = 1.0 - std::exp(-rate * x[i]);
    d = std::max(d, std::max((i + 1) / n - F, F - i / n));
  }
  KsResult r;
  r.statistic = d;
  r.critical = std::sqrt(-std::log(alpha / 2.0) / 2.0) / std::sqrt(n);
  r.reject = d > r.critical;
  return r;
}

double anderson_darling_normal(std::vector<double> x) {
  if (x.size() < 8) fail(errc::input, "anderson_darling_normal needs >= 8 samples");
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double a = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    double F = normal_cdf(x[i]);
    F = std::min(std::max(F, 1e-15), 1.0 - 1e-15);
    const double Fr = std::min(std::max(normal_cdf(x[x.size() - 1 - i]), 1e-15), 1.0 - 1e-15);
    a += (2.0 * (i + 1) - 1.0) * (std::log(F) + std::log1p(-Fr));
  }
  return -n - a / n;
}

OlsFit ols(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) fail(errc::input, "ols: bad sizes");
  const double mx = mean(x), my = mean(y);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  OlsFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return f;
}

}  // namespace rosen
