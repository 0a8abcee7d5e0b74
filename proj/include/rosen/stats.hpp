#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rosen {

double mean(std::span<const double> x);
double variance(std::span<const double> x);  // unbiased
double std_err_mean(std::span<const double> x);
// standard error of the sample variance (uses the empirical 4th moment)
double std_err_variance(std::span<const double> x);
double skewness(std::span<const double> x);
double quantile(std::vector<double> x, double q);  // by value: sorts a copy
double pearson(std::span<const double> x, std::span<const double> y);

struct KsResult {
  double statistic = 0.0;
  double critical = 0.0;  // at the chosen level
  bool reject = false;
};

// classical two-sample KS; critical value c(alpha) sqrt((m+n)/(mn)) with
// c(alpha) = sqrt(-ln(alpha/2)/2)
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b, double alpha = 0.01);

// one-sample KS against Exp(rate)
KsResult ks_exponential(std::vector<double> x, double rate, double alpha = 0.01);

// Anderson-Darling statistic against the standard normal (fully specified
// case); 1% critical value 3.878
double anderson_darling_normal(std::vector<double> x);

struct OlsFit {
  double slope = 0.0, intercept = 0.0, r2 = 0.0;
};
OlsFit ols(std::span<const double> x, std::span<const double> y);

}  // namespace rosen
