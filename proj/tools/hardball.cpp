// Command-line front end: binds run configs to the sampling/dynamics engines
// and writes all artifacts (config echo, JSONL snapshots, CSV summaries).

#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <functional>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "hardball/dynamics.hpp"
#include "hardball/experiments.hpp"
#include "hardball/io.hpp"
#include "hardball/packing.hpp"
#include "hardball/runconfig.hpp"

namespace fs = std::filesystem;
using namespace hardball;

namespace {

struct CommonCli {
  std::string config_path;
  std::string out;
  RunConfig flags;  // values bound to CLI options
  CLI::Option* o_d = nullptr;
  CLI::Option* o_half_width = nullptr;
  CLI::Option* o_n = nullptr;
  CLI::Option* o_radius = nullptr;
  CLI::Option* o_radii = nullptr;
  CLI::Option* o_alpha = nullptr;
  CLI::Option* o_mass = nullptr;
  CLI::Option* o_lambda = nullptr;
  CLI::Option* o_sweeps = nullptr;
  CLI::Option* o_burn_in = nullptr;
  CLI::Option* o_thin = nullptr;
  CLI::Option* o_steps = nullptr;
  CLI::Option* o_dt = nullptr;
  CLI::Option* o_inertia = nullptr;
  CLI::Option* o_seed = nullptr;
  CLI::Option* o_replicas = nullptr;
  CLI::Option* o_jobs = nullptr;
  CLI::Option* o_no_centers = nullptr;
  bool no_centers = false;
};

void add_common(CLI::App* cmd, CommonCli& c) {
  cmd->add_option("--config", c.config_path, "JSON run config file");
  cmd->add_option("--out", c.out, "output directory");
  c.o_d = cmd->add_option("--d", c.flags.d, "dimension");
  c.o_half_width =
      cmd->add_option("--half-width", c.flags.half_width, "vessel half width");
  c.o_n = cmd->add_option("--n", c.flags.n, "object count");
  c.o_radius = cmd->add_option("--radius", c.flags.radius, "common radius");
  c.o_radii = cmd->add_option("--radii", c.flags.radii, "per-object radii");
  c.o_alpha = cmd->add_option("--alpha", c.flags.alpha, "per-object weights");
  c.o_mass = cmd->add_option("--mass", c.flags.mass, "per-object masses");
  c.o_lambda = cmd->add_option("--lambda", c.flags.lambda, "drift scale");
  c.o_sweeps = cmd->add_option("--sweeps", c.flags.sweeps, "recorded sweeps");
  c.o_burn_in = cmd->add_option("--burn-in", c.flags.burn_in, "burn-in sweeps");
  c.o_thin = cmd->add_option("--thin", c.flags.thin, "snapshot thinning");
  c.o_steps = cmd->add_option("--steps", c.flags.steps, "dynamics steps");
  c.o_dt = cmd->add_option("--dt", c.flags.dt, "dynamics time step");
  c.o_inertia = cmd->add_flag("--inertia", c.flags.inertia, "honor masses");
  c.o_seed = cmd->add_option("--seed", c.flags.seed, "rng seed");
  c.o_replicas =
      cmd->add_option("--replicas", c.flags.replicas, "independent chains");
  c.o_jobs = cmd->add_option("--jobs", c.flags.jobs, "worker threads");
  c.o_no_centers =
      cmd->add_flag("--no-centers", c.no_centers, "omit centers in JSONL");
}

// File config first, explicit flags override.
RunConfig resolve(const CommonCli& c) {
  RunConfig rc;
  if (!c.config_path.empty())
    rc = runconfig_from_json(read_json_file(c.config_path));
  auto ov = [](CLI::Option* o, auto& dst, const auto& src) {
    if (o && o->count()) dst = src;
  };
  ov(c.o_d, rc.d, c.flags.d);
  ov(c.o_half_width, rc.half_width, c.flags.half_width);
  ov(c.o_n, rc.n, c.flags.n);
  ov(c.o_radius, rc.radius, c.flags.radius);
  ov(c.o_radii, rc.radii, c.flags.radii);
  ov(c.o_alpha, rc.alpha, c.flags.alpha);
  ov(c.o_mass, rc.mass, c.flags.mass);
  ov(c.o_lambda, rc.lambda, c.flags.lambda);
  ov(c.o_sweeps, rc.sweeps, c.flags.sweeps);
  ov(c.o_burn_in, rc.burn_in, c.flags.burn_in);
  ov(c.o_thin, rc.thin, c.flags.thin);
  ov(c.o_steps, rc.steps, c.flags.steps);
  ov(c.o_dt, rc.dt, c.flags.dt);
  ov(c.o_inertia, rc.inertia, c.flags.inertia);
  ov(c.o_seed, rc.seed, c.flags.seed);
  ov(c.o_replicas, rc.replicas, c.flags.replicas);
  ov(c.o_jobs, rc.jobs, c.flags.jobs);
  if (c.o_no_centers && c.o_no_centers->count()) rc.write_centers = false;
  if (!c.out.empty()) rc.out_dir = c.out;
  return rc;
}

fs::path make_out_dir(const RunConfig& rc, const std::string& command) {
  fs::path dir;
  if (!rc.out_dir.empty()) {
    dir = rc.out_dir;
  } else {
    const auto now = std::chrono::system_clock::now().time_since_epoch();
    const long long stamp =
        std::chrono::duration_cast<std::chrono::seconds>(now).count();
    dir = command + "-" + std::to_string(stamp) + "-" +
          std::to_string(rc.seed);
  }
  fs::create_directories(dir);
  return dir;
}

void echo_config(const fs::path& dir, const RunConfig& rc,
                 const std::string& command) {
  RunConfig echoed = rc;
  echoed.out_dir.clear();  // keep config.json identical across run directories
  nlohmann::json j = runconfig_to_json(echoed);
  j["command"] = command;
  write_json_file(dir / "config.json", j);
}

std::string fmt(double v) { return format_double(v); }

// Run `count` tasks on up to `jobs` threads; exceptions are rethrown.
void fan_out(int count, int jobs, const std::function<void(int)>& task) {
  if (jobs <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) task(i);
    return;
  }
  std::vector<std::exception_ptr> errs;
  errs.resize(std::size_t(count));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= count) return;
      try {
        task(i);
      } catch (...) {
        errs[std::size_t(i)] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < std::min(jobs, count); ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

int cmd_sample(const CommonCli& c) {
  const RunConfig rc = resolve(c);
  const ModelSpec spec = rc.to_model();
  const fs::path dir = make_out_dir(rc, "sample");
  echo_config(dir, rc, "sample");

  std::vector<RunResult> runs(std::size_t(rc.replicas));
  fan_out(rc.replicas, rc.jobs, [&](int r) {
    const std::uint64_t seed = rc.seed + std::uint64_t(r);
    Configuration init = random_insertion_init(spec, seed);
    runs[std::size_t(r)] =
        run_chain(spec, init, rc.sweeps, rc.thin, rc.burn_in, seed);
  });

  std::vector<std::pair<std::string, std::string>> rows;
  rows.emplace_back("engine", "sampler");
  rows.emplace_back("seed", std::to_string(rc.seed));
  rows.emplace_back("replicas", std::to_string(rc.replicas));
  for (int r = 0; r < rc.replicas; ++r) {
    const RunResult& run = runs[std::size_t(r)];
    const std::string name =
        rc.replicas == 1 ? "snapshots.jsonl"
                         : "snapshots_" + std::to_string(r) + ".jsonl";
    write_snapshots_jsonl(dir / name, run.snapshots, SnapshotKind::kSweep,
                          rc.write_centers);
    const std::string p = "replica" + std::to_string(r) + ".";
    rows.emplace_back(p + "acceptance_rate", fmt(run.acceptance_rate));
    if (run.snapshots.size() >= 100) {
      const ChainDiagnostics dg =
          diagnostics(run.snapshots, run.acceptance_rate);
      rows.emplace_back(p + "tau", fmt(dg.tau));
      rows.emplace_back(p + "ess", fmt(dg.ess));
      rows.emplace_back(p + "converged", dg.converged ? "true" : "false");
    }
  }
  write_summary_csv(dir / "summary.csv", rows);
  return 0;
}

int cmd_simulate(const CommonCli& c) {
  const RunConfig rc = resolve(c);
  const ModelSpec spec = rc.to_model();
  const fs::path dir = make_out_dir(rc, "simulate");
  echo_config(dir, rc, "simulate");

  DynamicsParams params;
  params.dt = rc.dt;
  params.inertia_mode = rc.inertia;
  const double dt = params.dt > 0 ? params.dt : default_dt(spec);
  const double T = double(rc.steps) * dt;
  const double observe_every = double(rc.thin) * dt;

  Configuration init = random_insertion_init(spec, rc.seed);
  auto snaps = simulate(spec, init, params, T, observe_every, rc.seed);
  write_snapshots_jsonl(dir / "snapshots.jsonl", snaps, SnapshotKind::kTime,
                        rc.write_centers);
  write_summary_csv(dir / "summary.csv",
                    {{"engine", "dynamics"},
                     {"dt", fmt(dt)},
                     {"T", fmt(T)},
                     {"seed", std::to_string(rc.seed)},
                     {"snapshots", std::to_string(snaps.size())}});
  return 0;
}

int cmd_anneal(const CommonCli& c, const std::vector<double>& lambdas) {
  const RunConfig rc = resolve(c);
  const ModelSpec spec = rc.to_model();
  const fs::path dir = make_out_dir(rc, "anneal");
  echo_config(dir, rc, "anneal");

  AnnealResult a = anneal(spec, lambdas, rc.sweeps, rc.seed);
  write_json_file(dir / "best.json", config_to_json(a.best_cfg, spec.radii));
  write_json_file(dir / "final.json", config_to_json(a.final_cfg, spec.radii));
  write_summary_csv(dir / "summary.csv",
                    {{"engine", "anneal"},
                     {"best_wcm", fmt(a.best_wcm)},
                     {"seed", std::to_string(rc.seed)}});
  return 0;
}

int cmd_pack(const CommonCli& c, int restarts,
             const std::vector<double>& lambdas) {
  const RunConfig rc = resolve(c);
  const ModelSpec spec = rc.to_model();
  const fs::path dir = make_out_dir(rc, "pack");
  echo_config(dir, rc, "pack");

  C1Result r = c1_estimate(spec, restarts, lambdas, rc.sweeps, rc.seed);
  write_json_file(dir / "argmin.json", config_to_json(r.argmin, spec.radii));
  write_summary_csv(dir / "summary.csv",
                    {{"engine", "pack"},
                     {"c1_upper_bound", fmt(r.value)},
                     {"restarts", std::to_string(restarts)},
                     {"seed", std::to_string(rc.seed)}});
  return 0;
}

int cmd_path(const CommonCli& c, const std::string& from_file,
             const std::string& to_file, long samples) {
  const RunConfig rc = resolve(c);
  const ModelSpec spec = rc.to_model();
  const fs::path dir = make_out_dir(rc, "path");
  echo_config(dir, rc, "path");

  Configuration from = config_from_json(read_json_file(from_file));
  Configuration to = config_from_json(read_json_file(to_file));
  PathResult r = connectivity_path(spec, from, to, samples);
  write_path_csv(dir / "path.csv", r.keyframes);
  write_summary_csv(dir / "summary.csv",
                    {{"engine", "path"},
                     {"certified", r.certified ? "true" : "false"},
                     {"segments", std::to_string(r.segments)},
                     {"samples_checked", std::to_string(r.samples_checked)}});
  return r.certified ? 0 : 1;
}

int cmd_check_vessel(const CommonCli& c, double a, double b_max, int grid) {
  const RunConfig rc = resolve(c);
  const ModelSpec spec = rc.to_model();
  const fs::path dir = make_out_dir(rc, "check-vessel");
  echo_config(dir, rc, "check-vessel");

  VesselCheckResult r = check_vessel(spec.vessel, a, b_max, grid);
  std::printf("%12s %16s %16s\n", "b", "section", "product");
  for (const auto& row : r.table)
    std::printf("%12g %16g %16g\n", row.b, row.measure, row.product);
  std::printf("condition_holds=%s (%s)\n", r.condition_holds ? "true" : "false",
              r.message.c_str());
  write_summary_csv(dir / "summary.csv",
                    {{"engine", "check-vessel"},
                     {"a", fmt(a)},
                     {"b_max", fmt(b_max)},
                     {"condition_holds", r.condition_holds ? "true" : "false"},
                     {"b0_found", r.b0_found ? "true" : "false"},
                     {"message", r.message}});
  return r.condition_holds ? 0 : 1;
}

nlohmann::json wilson_json(const WilsonInterval& w) {
  return {{"lo", w.lo}, {"hi", w.hi}};
}

int cmd_experiment(const CommonCli& c, const std::string& name,
                   const std::vector<double>& lambdas, double rho,
                   double gamma_ratio, double delta, double m1,
                   const std::string& mode) {
  const RunConfig rc = resolve(c);
  const fs::path dir = make_out_dir(rc, "experiment-" + name);
  echo_config(dir, rc, "experiment " + name);

  nlohmann::json report;
  report["name"] = name;
  report["seed"] = rc.seed;
  int exit_code = 0;

  if (name == "surface") {
    SurfaceParams p;
    p.n = rc.n;
    p.rho = rho > 0 ? rho : rc.radius;
    p.half_width = rc.half_width;
    p.delta = delta;
    if (!lambdas.empty()) p.lambdas = lambdas;
    p.sweeps = rc.sweeps;
    p.burn_in = rc.burn_in;
    p.thin = rc.thin;
    p.seed = rc.seed;
    SurfaceResult r = surface_experiment(p);
    report["c1"] = r.c1;
    for (const auto& row : r.rows)
      report["rows"].push_back({{"lambda", row.lambda},
                                {"p_settled", row.p_settled},
                                {"p_no_drop", row.p_no_drop},
                                {"ess", row.ess},
                                {"settled_ci", wilson_json(row.settled_ci)},
                                {"no_drop_ci", wilson_json(row.no_drop_ci)}});
    const auto& last = r.rows.back();
    report["pass"] = last.p_settled > 0.9 && last.p_no_drop > 0.9;
  } else if (name == "centrifuge") {
    CentrifugeParams p;
    p.n = rc.n;
    p.rho = rho > 0 ? rho : rc.radius;
    p.half_width = rc.half_width;
    p.delta = delta;
    if (!lambdas.empty()) p.lambdas = lambdas;
    p.sweeps = rc.sweeps;
    p.burn_in = rc.burn_in;
    p.thin = rc.thin;
    p.seed = rc.seed;
    CentrifugeResult r = centrifuge_experiment(p);
    for (const auto& row : r.rows)
      report["rows"].push_back({{"lambda", row.lambda},
                                {"violation_freq", row.violation_freq},
                                {"ess", row.ess},
                                {"ci", wilson_json(row.ci)}});
    report["pass"] = r.rows.back().violation_freq < 0.05;
  } else if (name == "archimedes") {
    ArchimedesParams p;
    p.rho = rho > 0 ? rho : 0.06;
    p.n_small = rc.n;
    p.half_width = rc.half_width;
    p.gamma_ratio = gamma_ratio;
    p.lambda = rc.lambda;
    p.delta = delta;
    p.m1 = m1;
    p.mode = mode == "sink" ? ArchimedesMode::kSink : ArchimedesMode::kFloat;
    p.sweeps = rc.sweeps;
    p.burn_in = rc.burn_in;
    p.thin = rc.thin;
    p.seed = rc.seed;
    ArchimedesResult r = archimedes_experiment(p);
    report["critical_gamma"] = r.critical_gamma;
    report["precondition"] = r.precondition;
    report["p_float"] = r.p_float;
    report["p_sink"] = r.p_sink;
    report["ess"] = r.ess;
    report["float_ci"] = wilson_json(r.float_ci);
    report["sink_ci"] = wilson_json(r.sink_ci);
    report["pass"] = r.p_mode >= 0.9 && r.ess >= 100.0;
  } else if (name == "concentration") {
    const ModelSpec base = rc.to_model();
    std::vector<double> ls = lambdas.empty()
                                 ? std::vector<double>{1, 10, 100}
                                 : lambdas;
    ConcentrationResult r = concentration_experiment(
        base, ls, delta, rc.sweeps, rc.burn_in, rc.thin, rc.seed);
    report["c0"] = r.c0;
    report["monotone"] = r.monotone;
    for (const auto& row : r.rows)
      report["rows"].push_back({{"lambda", row.lambda},
                                {"p", row.p},
                                {"ess", row.ess},
                                {"ci", wilson_json(row.ci)}});
    report["pass"] = r.monotone && r.rows.back().p > 0.9;
  } else {
    throw std::invalid_argument("unknown experiment: " + name);
  }

  exit_code = report["pass"].get<bool>() ? 0 : 1;
  write_json_file(dir / "report.json", report);
  std::cout << report.dump(2) << "\n";
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hard-core discs in a vessel: sampling, dynamics, experiments"};
  app.require_subcommand(1);

  CommonCli c_sample, c_sim, c_anneal, c_pack, c_path, c_check, c_exp;
  add_common(app.add_subcommand("sample", "stationary-law sampler"), c_sample);
  add_common(app.add_subcommand("simulate", "time-stepped dynamics"), c_sim);

  auto* sc_anneal = app.add_subcommand("anneal", "annealed minimization");
  add_common(sc_anneal, c_anneal);
  std::vector<double> anneal_lambdas{1, 10, 100};
  sc_anneal->add_option("--lambdas", anneal_lambdas, "increasing drift scales");

  auto* sc_pack = app.add_subcommand("pack", "packing lower-state search");
  add_common(sc_pack, c_pack);
  int pack_restarts = 4;
  std::vector<double> pack_lambdas{5, 20, 80, 320};
  sc_pack->add_option("--restarts", pack_restarts, "independent restarts");
  sc_pack->add_option("--lambdas", pack_lambdas, "increasing drift scales");

  auto* sc_path = app.add_subcommand("path", "explicit path between configs");
  add_common(sc_path, c_path);
  std::string path_from, path_to;
  long path_samples = 1000;
  sc_path->add_option("--from", path_from, "start configuration JSON")
      ->required();
  sc_path->add_option("--to", path_to, "target configuration JSON")->required();
  sc_path->add_option("--samples", path_samples, "certificate samples/segment");

  auto* sc_check = app.add_subcommand("check-vessel", "drift domination check");
  add_common(sc_check, c_check);
  double check_a = 1.0, check_bmax = 2000.0;
  int check_grid = 64;
  sc_check->add_option("--a", check_a, "smallest drift rate");
  sc_check->add_option("--b-max", check_bmax, "largest height checked");
  sc_check->add_option("--grid", check_grid, "table size");

  auto* sc_exp = app.add_subcommand("experiment", "statistical experiments");
  add_common(sc_exp, c_exp);
  std::string exp_name, exp_mode = "float";
  std::vector<double> exp_lambdas;
  double exp_rho = 0.0, exp_gamma_ratio = 0.5, exp_delta = 0.3, exp_m1 = 1.0;
  sc_exp
      ->add_option("name", exp_name,
                   "surface | centrifuge | archimedes | concentration")
      ->required();
  sc_exp->add_option("--lambdas", exp_lambdas, "drift scales");
  sc_exp->add_option("--rho", exp_rho, "small-object radius");
  sc_exp->add_option("--gamma-ratio", exp_gamma_ratio,
                     "weight ratio relative to critical");
  sc_exp->add_option("--delta", exp_delta, "event slack");
  sc_exp->add_option("--m1", exp_m1, "large-object mass");
  sc_exp->add_option("--mode", exp_mode, "float | sink");

  try {
    app.parse(argc, argv);
    if (app.got_subcommand("sample")) return cmd_sample(c_sample);
    if (app.got_subcommand("simulate")) return cmd_simulate(c_sim);
    if (app.got_subcommand("anneal")) return cmd_anneal(c_anneal, anneal_lambdas);
    if (app.got_subcommand("pack"))
      return cmd_pack(c_pack, pack_restarts, pack_lambdas);
    if (app.got_subcommand("path"))
      return cmd_path(c_path, path_from, path_to, path_samples);
    if (app.got_subcommand("check-vessel"))
      return cmd_check_vessel(c_check, check_a, check_bmax, check_grid);
    if (app.got_subcommand("experiment"))
      return cmd_experiment(c_exp, exp_name, exp_lambdas, exp_rho,
                            exp_gamma_ratio, exp_delta, exp_m1, exp_mode);
    return 2;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
