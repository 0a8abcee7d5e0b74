// Command-line front end: simulation runs and verification suites.
//
// Exit codes: 0 ok / all checks pass, 1 verification failure (report still
// written), 2 invalid configuration, 3 I/O error.

#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "rosen/experiments.hpp"
#include "rosen/oracle.hpp"
#include "rosen/parallel.hpp"
#include "rosen/serialize.hpp"

namespace fs = std::filesystem;
using rosen::json;

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir = ".";
  int threads = 0;
  int reps = 0;
  // flag presence tracked by CLI11 counts
};

void add_param_flags(CLI::App* cmd, rosen::Params& p, CommonOpts& c) {
  cmd->add_option("--config", c.config_path, "JSON config file; flags override its values");
  cmd->add_option("--H", p.H, "Hurst index in (1/2,1)");
  cmd->add_option("--beta", p.beta, "rate parameter");
  cmd->add_option("--gamma", p.gamma, "rate-loss parameter");
  cmd->add_option("--a", p.a, "left truncation point (< 0)");
  cmd->add_option("--T", p.T, "horizon (> 0)");
  cmd->add_option("--n", p.n, "transport intensity (>= 1)");
  cmd->add_option("--seed", p.seed, "base seed");
  cmd->add_option("--bm-mesh", p.mesh.bm_mesh, "driver grid cells per unit time");
  cmd->add_option("--output-grid", p.mesh.output_grid_size, "output times on [0,T]");
  cmd->add_option("--time-quad", p.mesh.time_quad_points, "time quadrature subcells");
  cmd->add_option("--out", c.out_dir, "output directory");
  cmd->add_option("--threads", c.threads,
                  "worker threads (default ROSEN_THREADS or 1); never changes results");
  cmd->add_option("--reps", c.reps, "Monte Carlo replicates");
}

// config file first, then flags win
rosen::Params merge_params(const CLI::App* cmd, const rosen::Params& flag_values,
                           const CommonOpts& c) {
  rosen::Params p = flag_values;
  if (!c.config_path.empty()) {
    rosen::Params file_p = rosen::params_from_json(rosen::read_json_file(c.config_path));
    rosen::Params merged = file_p;
    auto won = [&](const std::string& name) { return cmd->get_option(name)->count() > 0; };
    if (won("--H")) merged.H = p.H;
    if (won("--beta")) merged.beta = p.beta;
    if (won("--gamma")) merged.gamma = p.gamma;
    if (won("--a")) merged.a = p.a;
    if (won("--T")) merged.T = p.T;
    if (won("--n")) merged.n = p.n;
    if (won("--seed")) merged.seed = p.seed;
    if (won("--bm-mesh")) merged.mesh.bm_mesh = p.mesh.bm_mesh;
    if (won("--output-grid")) merged.mesh.output_grid_size = p.mesh.output_grid_size;
    if (won("--time-quad")) merged.mesh.time_quad_points = p.mesh.time_quad_points;
    p = merged;
  }
  return p;
}

int reps_or(const CommonOpts& c, int dflt) { return c.reps > 0 ? c.reps : dflt; }

void ensure_out(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) rosen::fail(rosen::errc::io, "cannot create output directory " + dir);
}

int run_simulate(const rosen::Params& p, const CommonOpts& c, bool with_reference) {
  ensure_out(c.out_dir);
  rosen::AssembleOptions opt;
  opt.with_reference = with_reference;
  opt.estimate_remainder = with_reference;
  rosen::RosenblattRun run = rosen::assemble_run(p, p.seed, opt);
  const std::string hash = rosen::config_hash(p);
  rosen::write_run_csv(c.out_dir + "/run_" + hash + ".csv", run);
  json meta = rosen::run_meta_json(run);
  meta["effective_config"] = rosen::params_to_json(p);
  rosen::write_json_file(c.out_dir + "/run_" + hash + ".json", meta);
  std::cout << "run written: run_" << hash << ".csv (X(0)=" << run.X.front()
            << ", X(T)=" << run.X.back() << ")\n";
  return 0;
}

int run_verify(const std::string& suite, const rosen::Params& p, const CommonOpts& c) {
  ensure_out(c.out_dir);
  const std::string hash = rosen::config_hash(p);
  json rep;
  bool pass = true;

  if (suite == "constants") {
    const rosen::KernelConstants kc = rosen::normalizing_constant(p);
    const double identity = 2.0 * kc.cH * kc.cH * kc.g_norm2;
    rep = {{"schema", 1},
           {"kind", "constants"},
           {"cH", kc.cH},
           {"cH_rel_err", kc.cH_rel_err},
           {"g_norm2", kc.g_norm2},
           {"tail_bound", kc.tail_bound},
           {"trunc_M", kc.trunc_M},
           {"identity_2c2norm", identity}};
    pass = kc.cH_rel_err <= 1e-4 && std::abs(identity - 1.0) < 1e-12;
  } else if (suite == "law") {
    const rosen::LawReport lr = rosen::run_law_suite(p, reps_or(c, 500), p.seed);
    rep = rosen::law_report_json(lr);
    pass = lr.all_pass;
  } else if (suite == "coupling") {
    const std::vector<int> ns = {8, 16, 32, 64, 128};
    rosen::RateFit coupled = rosen::run_coupling_rate(p, ns, reps_or(c, 200), p.seed, false);
    rosen::RateFit control = rosen::run_coupling_rate(p, ns, reps_or(c, 200), p.seed, true);
    rep = {{"schema", 1},
           {"kind", "coupling_rate"},
           {"coupled", rosen::rate_fit_json(coupled)},
           {"independent_control", rosen::rate_fit_json(control)}};
    pass = coupled.slope >= -0.7 && coupled.slope <= -0.3 && control.slope >= -0.1;
  } else if (suite == "rate") {
    const std::vector<int> ns = {16, 32, 64, 128};
    rosen::StrongRateReport sr = rosen::run_strong_rate(p, ns, reps_or(c, 48), p.seed);
    rep = rosen::strong_rate_json(sr);
    rep["schema"] = 1;
    rep["kind"] = "strong_rate";
    pass = sr.envelope_ok && sr.inversions <= 1;
  } else {
    rosen::fail(rosen::errc::input, "unknown suite: " + suite);
  }

  rep["config_hash"] = hash;
  rep["effective_config"] = rosen::params_to_json(p);
  rep["pass"] = pass;
  rosen::write_json_file(c.out_dir + "/report_" + suite + "_" + hash + ".json", rep);
  std::cout << "report written: report_" << suite << "_" << hash << ".json -> "
            << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rosenblatt-process strong-approximation simulator and verifier"};
  app.require_subcommand(1);

  rosen::Params p_sim, p_ver;
  CommonOpts c_sim, c_ver;
  bool with_reference = false;

  CLI::App* sim = app.add_subcommand("simulate", "simulate one approximation run");
  add_param_flags(sim, p_sim, c_sim);
  sim->add_flag("--with-reference", with_reference, "also build the grid-Brownian reference");

  CLI::App* ver = app.add_subcommand("verify", "run a verification suite");
  std::string suite;
  ver->add_option("suite", suite, "law | coupling | rate | constants")->required();
  add_param_flags(ver, p_ver, c_ver);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (sim->parsed()) {
      rosen::set_default_threads(rosen::resolve_threads(c_sim.threads));
      const rosen::Params p = rosen::validate_params(merge_params(sim, p_sim, c_sim));
      return run_simulate(p, c_sim, with_reference);
    }
    rosen::set_default_threads(rosen::resolve_threads(c_ver.threads));
    const rosen::Params p = rosen::validate_params(merge_params(ver, p_ver, c_ver));
    return run_verify(suite, p, c_ver);
  } catch (const rosen::error& e) {
    std::cerr << e.what() << "\n";
    if (e.code() == rosen::errc::io) return 3;
    if (e.code() == rosen::errc::beta) {
      // name the admissible range in the message, as scripts key on it
      const rosen::Params* pp = sim->parsed() ? &p_sim : &p_ver;
      try {
        const auto [lo, hi] = rosen::beta_range(pp->H);
        std::cerr << "admissible beta range for H=" << pp->H << ": (" << lo << ", " << hi
                  << ")\n";
      } catch (...) {
      }
    }
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
