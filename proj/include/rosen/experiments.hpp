#pragma once

#include <string>
#include <vector>

#include "rosen/rosenblatt.hpp"
#include "rosen/stats.hpp"

namespace rosen {

struct McSummary {
  std::string estimator;
  int reps = 0;
  double mean = 0, std_err = 0;
  double q05 = 0, q25 = 0, q50 = 0, q75 = 0, q95 = 0;
  std::string config_hash;
};

McSummary summarize(const std::string& name, const std::vector<double>& xs,
                    const std::string& config_hash);

struct RateFit {
  std::vector<int> ns;
  std::vector<double> medians;
  double slope = 0, intercept = 0, r2 = 0;
  double theoretical_slope = 0;
  bool log_correction_used = false;
};

// OLS of log(ys) on log(xs); the flag subtracts (5/2) log log x first.
RateFit fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys,
                   bool subtract_log_correction);

// Median over reps of sup_{[0,1]} |B - Z^(n)| per n; independent_pairs swaps
// the coupled transport for an unrelated one (control: no spurious decay).
RateFit run_coupling_rate(const Params& p, const std::vector<int>& ns, int reps, uint64_t seed,
                          bool independent_pairs = false);

struct StrongRateReport {
  RateFit fit;
  std::vector<double> alpha_hats;  // per n
  double envelope_C = 0;           // calibrated at the smallest n
  bool envelope_ok = false;        // medians <= 2 C alpha_hat(n) for all n
  int inversions = 0;              // count of median increases along ns
};

// Median over reps of sup_t |Xc^{H,n} - Xref| on shared coupled drivers.
StrongRateReport run_strong_rate(const Params& p, const std::vector<int>& ns, int reps,
                                 uint64_t seed);

struct LawCheck {
  std::string name;
  double value = 0, target = 0, tol = 0;
  bool pass = false;
};

struct LawReport {
  std::vector<LawCheck> checks;
  bool all_pass = false;
  double cH = 0, eps_n = 0, alpha = 0, alpha_hat = 0;
  double oracle_var = 0;          // discrete variance of the oracle functional
  double skew_sim = 0, skew_oracle = 0;
  std::string config_hash;
  // Bonferroni: five sub-tests at 1% each give family level 5%
  double family_level = 0.05;
};

LawReport run_law_suite(const Params& p, int reps, uint64_t seed);

using rosen::ks_two_sample;  // the suite-level two-sample test lives in stats

}  // namespace rosen
