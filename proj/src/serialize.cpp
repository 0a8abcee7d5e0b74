#include "rosen/serialize.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <set>

namespace rosen {

namespace {

std::string canonical(const Params& p) {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "H=%.17g|beta=%.17g|gamma=%.17g|a=%.17g|T=%.17g|n=%d|bm=%d|ppd=%d|df=%.17g|"
                "og=%d|tq=%d|seed=%" PRIu64,
                p.H, p.beta, p.gamma, p.a, p.T, p.n, p.mesh.bm_mesh,
                p.mesh.b3_points_per_decade, p.mesh.delta_floor, p.mesh.output_grid_size,
                p.mesh.time_quad_points, p.seed);
  return buf;
}

std::string fnv1a_hex(const std::string& s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char out[17];
  std::snprintf(out, sizeof(out), "%016" PRIx64, h);
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string config_hash(const Params& p) { return fnv1a_hex(canonical(p)); }

json params_to_json(const Params& p) {
  return json{{"H", p.H},
              {"beta", p.beta},
              {"gamma", p.gamma},
              {"a", p.a},
              {"T", p.T},
              {"n", p.n},
              {"seed", p.seed},
              {"mesh",
               {{"bm_mesh", p.mesh.bm_mesh},
                {"b3_points_per_decade", p.mesh.b3_points_per_decade},
                {"delta_floor", p.mesh.delta_floor},
                {"output_grid_size", p.mesh.output_grid_size},
                {"time_quad_points", p.mesh.time_quad_points}}}};
}

Params params_from_json(const json& j) {
  static const std::set<std::string> known = {"H",    "beta", "gamma", "a",   "T",
                                              "n",    "seed", "mesh",  "reps"};
  static const std::set<std::string> known_mesh = {"bm_mesh", "b3_points_per_decade",
                                                   "delta_floor", "output_grid_size",
                                                   "time_quad_points"};
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) fail(errc::input, "unknown config key: " + k);
  Params p;
  if (j.contains("H")) p.H = j["H"].get<double>();
  if (j.contains("beta")) p.beta = j["beta"].get<double>();
  if (j.contains("gamma")) p.gamma = j["gamma"].get<double>();
  if (j.contains("a")) p.a = j["a"].get<double>();
  if (j.contains("T")) p.T = j["T"].get<double>();
  if (j.contains("n")) p.n = j["n"].get<int>();
  if (j.contains("seed")) p.seed = j["seed"].get<uint64_t>();
  if (j.contains("mesh")) {
    const auto& m = j["mesh"];
    for (const auto& [k, v] : m.items())
      if (!known_mesh.count(k)) fail(errc::input, "unknown mesh key: " + k);
    if (m.contains("bm_mesh")) p.mesh.bm_mesh = m["bm_mesh"].get<int>();
    if (m.contains("b3_points_per_decade"))
      p.mesh.b3_points_per_decade = m["b3_points_per_decade"].get<int>();
    if (m.contains("delta_floor")) p.mesh.delta_floor = m["delta_floor"].get<double>();
    if (m.contains("output_grid_size"))
      p.mesh.output_grid_size = m["output_grid_size"].get<int>();
    if (m.contains("time_quad_points"))
      p.mesh.time_quad_points = m["time_quad_points"].get<int>();
  }
  return p;
}

json run_meta_json(const RosenblattRun& run) {
  json j;
  j["schema"] = 1;
  j["params"] = params_to_json(run.params);
  j["config_hash"] = config_hash(run.params);
  j["seed"] = run.seed;
  j["eps_n"] = run.eps_n;
  j["alpha_n"] = run.alpha;
  j["alpha_hat_n"] = run.alpha_hat;
  j["cH"] = run.cH;
  j["delta"] = run.delta;
  j["eps_ref"] = run.eps_ref;
  j["coupled"] = run.coupled;
  j["error_budget"] = {{"b3_tail_bound", run.b3_tail_bound},
                       {"remainder_estimate", run.remainder_estimate}};
  j["compensator_mu"] = run.mu;
  j["compensator_mu_ref"] = run.mu_ref;
  return j;
}

json law_report_json(const LawReport& rep) {
  json checks = json::array();
  for (const auto& c : rep.checks)
    checks.push_back(json{{"name", c.name},
                          {"value", c.value},
                          {"target", c.target},
                          {"tolerance", c.tol},
                          {"pass", c.pass}});
  return json{{"schema", 1},
              {"kind", "law_suite"},
              {"checks", checks},
              {"all_pass", rep.all_pass},
              {"cH", rep.cH},
              {"eps_n", rep.eps_n},
              {"alpha_n", rep.alpha},
              {"alpha_hat_n", rep.alpha_hat},
              {"oracle_var", rep.oracle_var},
              {"skewness_sim", rep.skew_sim},
              {"skewness_oracle", rep.skew_oracle},
              {"family_level", rep.family_level},
              {"config_hash", rep.config_hash}};
}

json rate_fit_json(const RateFit& fit) {
  return json{{"ns", fit.ns},
              {"medians", fit.medians},
              {"slope", fit.slope},
              {"intercept", fit.intercept},
              {"r2", fit.r2},
              {"theoretical_slope", fit.theoretical_slope},
              {"log_correction_used", fit.log_correction_used}};
}

json strong_rate_json(const StrongRateReport& rep) {
  json j = rate_fit_json(rep.fit);
  j["alpha_hats"] = rep.alpha_hats;
  j["envelope_C"] = rep.envelope_C;
  j["envelope_ok"] = rep.envelope_ok;
  j["inversions"] = rep.inversions;
  return j;
}

json summary_json(const McSummary& s) {
  return json{{"estimator", s.estimator}, {"reps", s.reps},     {"mean", s.mean},
              {"std_err", s.std_err},     {"q05", s.q05},       {"q25", s.q25},
              {"q50", s.q50},             {"q75", s.q75},       {"q95", s.q95},
              {"config_hash", s.config_hash}};
}

void write_run_csv(const std::string& path, const RosenblattRun& run) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(errc::io, "cannot open " + path);
  const bool ref = !run.Xref.empty();
  f << "t,X1,X2,X3,X" << (ref ? ",Xref" : "") << "\r\n";
  for (size_t i = 0; i < run.t_grid.size(); ++i) {
    f << fmt(run.t_grid[i]) << ',' << fmt(run.X1[i]) << ',' << fmt(run.X2[i]) << ','
      << fmt(run.X3[i]) << ',' << fmt(run.X[i]);
    if (ref) f << ',' << fmt(run.Xref[i]);
    f << "\r\n";
  }
}

void write_path_csv(const std::string& path, const PiecewiseLinearPath& pl,
                    const std::string& name, uint64_t seed) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(errc::io, "cannot open " + path);
  f << "# driver=" << name << " seed=" << seed << "\r\n";
  f << "t,value\r\n";
  for (size_t i = 0; i < pl.times.size(); ++i)
    f << fmt(pl.times[i]) << ',' << fmt(pl.values[i]) << "\r\n";
}

void write_transport_csv(const std::string& path, const TransportPath& Z) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(errc::io, "cannot open " + path);
  f << "segment_start,segment_end,slope\r\n";
  for (size_t i = 0; i + 1 < Z.pl.times.size(); ++i) {
    const double slope =
        (Z.pl.values[i + 1] - Z.pl.values[i]) / (Z.pl.times[i + 1] - Z.pl.times[i]);
    f << fmt(Z.pl.times[i]) << ',' << fmt(Z.pl.times[i + 1]) << ',' << fmt(slope) << "\r\n";
  }
}

void write_samples_csv(const std::string& path, const std::vector<std::vector<double>>& rows,
                       const std::string& header) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(errc::io, "cannot open " + path);
  f << header << "\r\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) f << (i ? "," : "") << fmt(row[i]);
    f << "\r\n";
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(errc::io, "cannot open " + path);
  f << j.dump(2) << "\n";
}

json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(errc::io, "cannot open " + path);
  json j;
  try {
    f >> j;
  } catch (const std::exception& e) {
    fail(errc::input, std::string("bad JSON in ") + path + ": " + e.what());
  }
  return j;
}

}  // namespace rosen
