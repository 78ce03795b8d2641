// Acceptance harness: one numbered criterion per invocation, printing a
// single PASS/FAIL line (plus supporting numbers) and exiting 0/1. All
// tolerances and seeds are pinned here.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hardball/diagnostics.hpp"
#include "hardball/dynamics.hpp"
#include "hardball/experiments.hpp"
#include "hardball/io.hpp"
#include "hardball/packing.hpp"
#include "hardball/sampler.hpp"

using namespace hardball;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

ModelSpec strip_spec(int n, double radius, double half_width = 1.0) {
  return ModelSpec::uniform(2, Vessel::half_cylinder(2, half_width), n, radius);
}

// Lateral placement area for two discs of radius r at height gap dh, centers
// confined to [-c, c] per disc: the square minus the band |y1 - y2| < s.
double lateral_pair_area(double dh, double c, double r) {
  const double w = 2.0 * c;
  const double d2 = 4.0 * r * r - dh * dh;
  if (d2 <= 0.0) return w * w;
  const double s = std::sqrt(d2);
  if (s >= w) return 0.0;
  return (w - s) * (w - s);
}

// ---- criterion 1: single-disc stationary marginal ----

bool criterion1() {
  const auto t0 = Clock::now();
  ModelSpec s = strip_spec(1, 0.1);
  Configuration init;
  init.d = 2;
  init.x = {0.6, 0.0};
  ChainState state = make_chain(s, init, 20260101);
  for (int i = 0; i < 50000; ++i) mh_step(s, state, true);
  const long n = 3000000;
  std::vector<double> xs(n);
  for (long i = 0; i < n; ++i) {
    mh_step(s, state, false);
    xs[i] = state.cfg.center(0)[0] - 0.1;
  }
  const AcfResult acf = autocorrelation(xs);
  const double ks =
      ks_distance(xs, [](double t) { return 1.0 - std::exp(-2.0 * t); });
  const double elapsed = seconds_since(t0);
  const bool pass = ks < 0.02 && acf.ess >= 1e5 && elapsed < 30.0;
  std::printf("criterion 1: %s single-disc height vs shifted exponential "
              "(ks=%.4f, ess=%.0f, %.1fs)\n",
              pass ? "PASS" : "FAIL", ks, acf.ess, elapsed);
  return pass;
}

// ---- criterion 2: acceptance-ratio antisymmetry ----

bool criterion2() {
  const auto t0 = Clock::now();
  ModelSpec s = strip_spec(4, 0.1);
  s.alpha = {1.0, 2.0, 0.5, 3.0};
  s.lambda = 1.7;
  CounterRng rng(22);
  double worst = 0.0;
  for (long i = 0; i < 1000000; ++i) {
    const int k = int(rng.below(4));
    double a[2] = {5.0 * rng.uniform(), rng.uniform()};
    double b[2] = {5.0 * rng.uniform(), rng.uniform()};
    worst = std::max(worst, std::abs(log_target_ratio(s, k, a, b) +
                                     log_target_ratio(s, k, b, a)));
  }
  const double elapsed = seconds_since(t0);
  const bool pass = worst < 1e-12 && elapsed < 1.0;
  std::printf("criterion 2: %s log ratio antisymmetry over 1e6 pairs "
              "(worst=%.2e, %.2fs)\n",
              pass ? "PASS" : "FAIL", worst, elapsed);
  return pass;
}

// ---- criteria 3 and 8 share the two-disc quadrature machinery ----

struct TwoDiscOracle {
  static constexpr int kBins = 20;
  double r, c, a1, a2;
  double bin_w;
  double span;
  // joint bin probabilities over [r, r+span)^2 plus overflow mass
  std::array<double, kBins * kBins> p{};
  double p_out = 0.0;
  double p_violation = 0.0;  // P(h1 >= h2 + delta), for the sorting oracle
  double delta = 0.0;

  void compute() {
    const int cells = 24 * kBins * 3;  // fine grid over [r, r+3*span)
    const double pitch = 3.0 * span / double(cells);
    double z = 0.0, viol = 0.0;
    std::vector<double> weight1(cells), height(cells);
    for (int i = 0; i < cells; ++i) {
      height[i] = r + (i + 0.5) * pitch;
      weight1[i] = std::exp(-2.0 * a1 * (height[i] - r));
    }
    for (int i = 0; i < cells; ++i) {
      const double h1 = height[i];
      for (int j = 0; j < cells; ++j) {
        const double h2 = height[j];
        const double w = weight1[i] * std::exp(-2.0 * a2 * (h2 - r)) *
                         lateral_pair_area(h1 - h2, c, r);
        z += w;
        if (h1 >= h2 + delta) viol += w;
        const int bi = int((h1 - r) / bin_w), bj = int((h2 - r) / bin_w);
        if (bi < kBins && bj < kBins)
          p[std::size_t(bi) * kBins + bj] += w;
        else
          p_out += w;
      }
    }
    for (auto& v : p) v /= z;
    p_out /= z;
    p_violation = viol / z;
  }
};

bool criterion3() {
  const auto t0 = Clock::now();
  const double r = 0.15;
  TwoDiscOracle oracle;
  oracle.r = r;
  oracle.c = 1.0 - r;
  oracle.a1 = 1.0;
  oracle.a2 = 2.0;
  oracle.span = 2.0;
  oracle.bin_w = oracle.span / TwoDiscOracle::kBins;
  oracle.compute();

  ModelSpec s = strip_spec(2, r);
  s.alpha = {1.0, 2.0};
  Configuration init;
  init.d = 2;
  init.x = {0.4, -0.4, 0.4, 0.4};
  ChainState state = make_chain(s, init, 333);
  for (int i = 0; i < 20000; ++i) mh_sweep(s, state, true);
  std::array<double, TwoDiscOracle::kBins * TwoDiscOracle::kBins> q{};
  double q_out = 0.0;
  const long sweeps = 3000000;
  for (long i = 0; i < sweeps; ++i) {
    mh_sweep(s, state, false);
    const double h1 = state.cfg.center(0)[0] - r;
    const double h2 = state.cfg.center(1)[0] - r;
    const int bi = int(h1 / oracle.bin_w), bj = int(h2 / oracle.bin_w);
    if (bi < TwoDiscOracle::kBins && bj < TwoDiscOracle::kBins)
      q[std::size_t(bi) * TwoDiscOracle::kBins + bj] += 1.0;
    else
      q_out += 1.0;
  }
  double tv = std::abs(q_out / double(sweeps) - oracle.p_out);
  for (std::size_t i = 0; i < q.size(); ++i)
    tv += std::abs(q[i] / double(sweeps) - oracle.p[i]);
  tv *= 0.5;
  const double elapsed = seconds_since(t0);
  const bool pass = tv < 0.03;
  std::printf("criterion 3: %s two-disc joint law vs quadrature "
              "(tv=%.4f on 20x20 bins, %.1fs)\n",
              pass ? "PASS" : "FAIL", tv, elapsed);
  return pass;
}

// ---- criterion 4: dynamics agrees with the sampler ----

bool criterion4() {
  const auto t0 = Clock::now();
  ModelSpec s = strip_spec(10, 0.15);
  Configuration init = random_insertion_init(s, 44);
  RunResult chain = run_chain(s, init, 30000, 10, 3000, 44);
  std::vector<double> surf_s(chain.snapshots.size());
  for (std::size_t i = 0; i < chain.snapshots.size(); ++i)
    surf_s[i] = chain.snapshots[i].surface;
  const double mean_s = mean(surf_s);
  const double se_s = correlated_sem(surf_s);

  DynamicsParams params;  // default dt
  const Configuration start = chain.snapshots.back().cfg;
  auto snaps = simulate(s, start, params, 20.0, 0.01, 4440);
  std::vector<double> surf_d;
  for (std::size_t i = snaps.size() / 10; i < snaps.size(); ++i)
    surf_d.push_back(snaps[i].surface);
  const double mean_d = mean(surf_d);
  const double se_d = correlated_sem(surf_d);

  const double gap = std::abs(mean_s - mean_d);
  const double limit = 3.0 * std::sqrt(se_s * se_s + se_d * se_d);
  const double elapsed = seconds_since(t0);
  const bool pass = gap < limit && elapsed < 300.0;
  std::printf("criterion 4: %s engine agreement on mean surface "
              "(sampler=%.4f+-%.4f, dynamics=%.4f+-%.4f, gap=%.4f, "
              "limit=%.4f, %.0fs)\n",
              pass ? "PASS" : "FAIL", mean_s, se_s, mean_d, se_d, gap, limit,
              elapsed);
  return pass;
}

// ---- criterion 5: honeycomb density ----

bool criterion5() {
  const auto t0 = Clock::now();
  const double rho = 0.25;
  HoneycombSpec h{rho, {rho, 0.0}};
  Vessel box = Vessel::half_cylinder(2, 25.0);  // lateral span 50
  auto pts_all = honeycomb_in_region(h, box, 30000);
  std::vector<std::array<double, 2>> pts;
  for (const auto& p : pts_all)
    if (p[0] <= 50.0 - rho) pts.push_back(p);

  double lo0 = 1e300, hi0 = -1e300, lo1 = 1e300, hi1 = -1e300;
  for (const auto& p : pts) {
    lo0 = std::min(lo0, p[0]);
    hi0 = std::max(hi0, p[0]);
    lo1 = std::min(lo1, p[1]);
    hi1 = std::max(hi1, p[1]);
  }
  const double area =
      (hi0 - lo0 + 2.0 * rho) * (hi1 - lo1 + 2.0 * rho);
  const double kPi = 3.141592653589793;
  const double covered = double(pts.size()) * kPi * rho * rho / area;
  const double target = kPi / std::sqrt(12.0);

  double min_d2 = 1e300;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double dx = pts[i][0] - pts[j][0], dy = pts[i][1] - pts[j][1];
      min_d2 = std::min(min_d2, dx * dx + dy * dy);
    }
  const double min_d = std::sqrt(min_d2);
  const double elapsed = seconds_since(t0);
  const bool pass =
      std::abs(covered - target) < 0.01 * target && min_d >= 2.0 * rho - 1e-12;
  std::printf("criterion 5: %s honeycomb covered fraction in a 50x50 box "
              "(%.5f vs %.5f, n=%zu, min dist=%.12f, %.1fs)\n",
              pass ? "PASS" : "FAIL", covered, target, pts.size(), min_d,
              elapsed);
  return pass;
}

// ---- criterion 6: lowest weighted cm vs grid brute force ----

// Sequential vertical drop of equal discs at fixed lateral positions; the
// exhaustive scan over lateral grids covers every support structure because
// in a gravity-stable optimum each disc rests on strictly lower supports.
double brute_force_c1(int n, double r, double half_width, double pitch) {
  const double lmax = half_width - r;
  std::vector<double> grid;
  for (double l = -lmax; l <= lmax + 1e-12; l += pitch) grid.push_back(l);
  const int g = int(grid.size());
  const std::size_t un = std::size_t(n);
  std::vector<int> idx(un, 0);
  std::vector<double> lat(un, 0.0), h(un, 0.0);
  double best = 1e300;
  for (;;) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      lat[i] = grid[std::size_t(idx[std::size_t(i)])];
      double hi = r;
      for (int j = 0; j < i; ++j) {
        const double dl = lat[i] - lat[std::size_t(j)];
        const double d2 = 4.0 * r * r - dl * dl;
        if (d2 > 1e-12) hi = std::max(hi, h[std::size_t(j)] + std::sqrt(d2));
      }
      h[std::size_t(i)] = hi;
      total += hi;
      if (total >= best) break;
    }
    best = std::min(best, total);
    int p = n - 1;
    while (p >= 0 && ++idx[std::size_t(p)] == g) idx[std::size_t(p--)] = 0;
    if (p < 0) break;
  }
  return best;
}

bool criterion6() {
  const auto t0 = Clock::now();
  bool pass = true;
  struct Case {
    int n;
    double r, w;
  };
  for (const Case cs : {Case{2, 0.3, 0.5}, Case{3, 0.25, 0.75},
                        Case{4, 0.25, 0.75}}) {
    ModelSpec spec = strip_spec(cs.n, cs.r, cs.w);
    const double sched[] = {5.0, 20.0, 80.0, 320.0};
    const double est = c1_estimate(spec, 4, sched, 2000, 606).value;
    const double oracle = brute_force_c1(cs.n, cs.r, cs.w, 0.02);
    const double rel = std::abs(est - oracle) / oracle;
    const bool ok = rel < 0.02;
    pass = pass && ok;
    std::printf("  n=%d r=%.2f: estimate=%.5f brute=%.5f rel=%.4f %s\n", cs.n,
                cs.r, est, oracle, rel, ok ? "ok" : "BAD");
  }
  std::printf("criterion 6: %s packed-state value vs grid brute force "
              "(%.0fs)\n",
              pass ? "PASS" : "FAIL", seconds_since(t0));
  return pass;
}

// ---- criterion 7: liquid surface formation ----

bool criterion7() {
  const auto t0 = Clock::now();
  SurfaceParams p;
  p.seed = 7070;
  SurfaceResult r = surface_experiment(p);
  if (r.rows.size() != p.lambdas.size()) {
    std::printf("criterion 7: FAIL row count\n");
    return false;
  }
  int decreases = 0;
  bool overlap_ok = true;
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    if (r.rows[i].p_settled < r.rows[i - 1].p_settled) {
      ++decreases;
      const bool overlap =
          r.rows[i].settled_ci.hi >= r.rows[i - 1].settled_ci.lo &&
          r.rows[i - 1].settled_ci.hi >= r.rows[i].settled_ci.lo;
      overlap_ok = overlap_ok && overlap;
    }
  }
  const SurfaceRow& last = r.rows.back();
  const bool pass = decreases <= 1 && overlap_ok && last.p_settled > 0.9 &&
                    last.p_no_drop > 0.9;
  for (const auto& row : r.rows)
    std::printf("  lambda=%g settled=%.3f no_drop=%.3f ess=%.0f\n", row.lambda,
                row.p_settled, row.p_no_drop, row.ess);
  std::printf("criterion 7: %s settling monotone in drift, settled and "
              "hole-free at the top scale (c1=%.4f, %.0fs)\n",
              pass ? "PASS" : "FAIL", r.c1, seconds_since(t0));
  return pass;
}

// ---- criterion 8: sorting by weight ----

bool criterion8() {
  const auto t0 = Clock::now();
  CentrifugeParams p;
  p.seed = 808;
  CentrifugeResult cr = centrifuge_experiment(p);
  const double freq = cr.rows.back().violation_freq;

  // two-disc oracle at a moderate drift where the probability is testable
  const double r = 0.1, delta = 0.1, lambda = 2.0;
  TwoDiscOracle oracle;
  oracle.r = r;
  oracle.c = 1.0 - r;
  oracle.a1 = 2.0 * lambda;  // heavy
  oracle.a2 = 1.0 * lambda;
  oracle.span = 2.0;
  oracle.bin_w = oracle.span / TwoDiscOracle::kBins;
  oracle.delta = delta;
  oracle.compute();

  ModelSpec s = strip_spec(2, r);
  s.alpha = {2.0, 1.0};
  s.lambda = lambda;
  ChainState state = make_chain(s, random_insertion_init(s, 88), 88);
  for (int i = 0; i < 20000; ++i) mh_sweep(s, state, true);
  const long sweeps = 400000;
  std::vector<double> hit(std::size_t(sweeps), 0.0);
  for (long i = 0; i < sweeps; ++i) {
    mh_sweep(s, state, false);
    hit[std::size_t(i)] =
        state.cfg.center(0)[0] >= state.cfg.center(1)[0] + delta ? 1.0 : 0.0;
  }
  const double p_hat = mean(hit);
  const AcfResult acf = autocorrelation(hit);
  const WilsonInterval ci = wilson(p_hat * acf.ess, acf.ess);
  const bool oracle_ok =
      oracle.p_violation >= ci.lo && oracle.p_violation <= ci.hi;

  const bool pass = freq < 0.05 && oracle_ok;
  std::printf("criterion 8: %s weight sorting (violations=%.4f at "
              "lambda=200; two-disc oracle %.4f in [%.4f, %.4f], %.0fs)\n",
              pass ? "PASS" : "FAIL", freq, oracle.p_violation, ci.lo, ci.hi,
              seconds_since(t0));
  return pass;
}

// ---- criteria 9 and 10: buoyancy of the large disc ----

constexpr double kBathLambda = 10.0;

ArchimedesResult run_buoyancy(double gamma_ratio, double m1,
                              ArchimedesMode mode, std::uint64_t seed) {
  ArchimedesParams p;
  p.gamma_ratio = gamma_ratio;
  p.m1 = m1;
  p.mode = mode;
  p.lambda = kBathLambda;
  p.seed = seed;
  return archimedes_experiment(p);
}

bool criterion9() {
  const auto t0 = Clock::now();
  ArchimedesResult fl = run_buoyancy(0.5, 1.0, ArchimedesMode::kFloat, 901);
  ArchimedesResult sk = run_buoyancy(2.0, 1.0, ArchimedesMode::kSink, 902);
  const double elapsed = seconds_since(t0);
  const bool pass = fl.p_float >= 0.9 && sk.p_sink >= 0.9 && fl.ess >= 100.0 &&
                    sk.ess >= 100.0 && elapsed < 1800.0;
  std::printf("criterion 9: %s buoyancy threshold (precondition=%.3f; "
              "float@0.5x=%.3f ess=%.0f; sink@2x=%.3f ess=%.0f; %.0fs)\n",
              pass ? "PASS" : "FAIL", fl.precondition, fl.p_float, fl.ess,
              sk.p_sink, sk.ess, elapsed);
  return pass;
}

bool criterion10() {
  const auto t0 = Clock::now();
  // same absolute large-disc weight in both runs: below the threshold at
  // unit mass, beyond it once the mass raises the effective weight
  ArchimedesResult light = run_buoyancy(0.5, 1.0, ArchimedesMode::kFloat, 1001);
  ArchimedesResult heavy = run_buoyancy(2.0, 4.0, ArchimedesMode::kSink, 1002);
  const bool pass = light.p_float >= 0.9 && heavy.p_sink >= 0.9;
  std::printf("criterion 10: %s mass shifts the sinking threshold "
              "(m=1 floats %.3f, m=4 sinks %.3f, %.0fs)\n",
              pass ? "PASS" : "FAIL", light.p_float, heavy.p_sink,
              seconds_since(t0));
  return pass;
}

// ---- criterion 11: explicit connectivity paths ----

bool criterion11() {
  const auto t0 = Clock::now();
  ModelSpec s = strip_spec(8, 0.1);
  int passed = 0;
  for (int trial = 0; trial < 10; ++trial) {
    Configuration from = random_insertion_init(s, 1100 + 2 * trial);
    Configuration to = random_insertion_init(s, 1101 + 2 * trial);
    PathResult r = connectivity_path(s, from, to, 1000);
    passed += r.certified ? 1 : 0;
  }
  const bool pass = passed == 10;
  std::printf("criterion 11: %s connectivity paths certified (%d/10, %.0fs)\n",
              pass ? "PASS" : "FAIL", passed, seconds_since(t0));
  return pass;
}

// ---- criterion 12: drift domination checker ----

bool criterion12() {
  const auto t0 = Clock::now();
  Vessel v = Vessel::half_cylinder(2, 1.0);
  bool pass = true;
  for (double a : {0.01, 1.0, 100.0})
    pass = pass && check_vessel(v, a).condition_holds;
  const double a = 1.0;
  pass = pass && !check_vessel([a](double b) { return std::exp(4.0 * a * b); },
                               a, 50.0)
                      .condition_holds;
  const double elapsed = seconds_since(t0);
  pass = pass && elapsed < 1.0;
  std::printf("criterion 12: %s vessel admissibility checker (%.2fs)\n",
              pass ? "PASS" : "FAIL", elapsed);
  return pass;
}

// ---- criterion 13: byte-identical reruns through the command line ----

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

bool run_cli(const std::string& cli, const std::string& args) {
  const std::string cmd = cli + " " + args + " > /dev/null 2>&1";
  return std::system(cmd.c_str()) == 0;
}

bool criterion13(const std::string& cli) {
  const auto t0 = Clock::now();
  const fs::path base = fs::temp_directory_path() / "hardball-accept13";
  fs::remove_all(base);
  fs::create_directories(base);

  const std::string sample_args =
      "sample --n 8 --radius 0.12 --lambda 3 --sweeps 2000 --burn-in 500 "
      "--thin 5 --seed 424242 --out ";
  const std::string sim_args =
      "simulate --n 5 --radius 0.1 --steps 20000 --thin 200 --seed 77 --out ";

  bool pass = true;
  const std::vector<std::pair<std::string, std::string>> runs{
      {"sample", sample_args}, {"simulate", sim_args}};
  for (const auto& [tag, args] : runs) {
    const fs::path d1 = base / (tag + "-1"), d2 = base / (tag + "-2");
    pass = pass && run_cli(cli, args + d1.string());
    pass = pass && run_cli(cli, args + d2.string());
    for (const char* f : {"snapshots.jsonl", "summary.csv", "config.json"}) {
      const bool same = slurp(d1 / f) == slurp(d2 / f) && !slurp(d1 / f).empty();
      if (!same) std::printf("  %s/%s differs between reruns\n", tag.c_str(), f);
      pass = pass && same;
    }
  }
  fs::remove_all(base);
  std::printf("criterion 13: %s byte-identical reruns for fixed "
              "(config, seed) (%.0fs)\n",
              pass ? "PASS" : "FAIL", seconds_since(t0));
  return pass;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance <criterion 1..13> [cli-path]\n");
    return 2;
  }
  const int id = std::atoi(argv[1]);
  bool pass = false;
  switch (id) {
    case 1: pass = criterion1(); break;
    case 2: pass = criterion2(); break;
    case 3: pass = criterion3(); break;
    case 4: pass = criterion4(); break;
    case 5: pass = criterion5(); break;
    case 6: pass = criterion6(); break;
    case 7: pass = criterion7(); break;
    case 8: pass = criterion8(); break;
    case 9: pass = criterion9(); break;
    case 10: pass = criterion10(); break;
    case 11: pass = criterion11(); break;
    case 12: pass = criterion12(); break;
    case 13:
      if (argc < 3) {
        std::fprintf(stderr, "criterion 13 needs the cli binary path\n");
        return 2;
      }
      pass = criterion13(argv[2]);
      break;
    default:
      std::fprintf(stderr, "unknown criterion %d\n", id);
      return 2;
  }
  return pass ? 0 : 1;
}
