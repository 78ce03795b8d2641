#include <cmath>
#include <vector>

#include <doctest.h>

#include "hardball/diagnostics.hpp"
#include "hardball/sampler.hpp"

using namespace hardball;

namespace {

ModelSpec strip_spec(int n, double radius, double half_width = 1.0) {
  return ModelSpec::uniform(2, Vessel::half_cylinder(2, half_width), n, radius);
}

}  // namespace

TEST_CASE("log_target_ratio matches the density and is antisymmetric") {
  ModelSpec s = strip_spec(3, 0.1);
  s.alpha = {1.0, 2.5, 0.7};
  s.lambda = 1.3;
  CounterRng rng(8);
  for (int trial = 0; trial < 1000; ++trial) {
    const int k = int(rng.below(3));
    double a[2] = {rng.uniform() * 3, rng.uniform()};
    double b[2] = {rng.uniform() * 3, rng.uniform()};
    const double fwd = log_target_ratio(s, k, a, b);
    const double bwd = log_target_ratio(s, k, b, a);
    CHECK(std::abs(fwd + bwd) < 1e-12);
    CHECK(fwd ==
          doctest::Approx(-2.0 * s.lambda * s.alpha[k] * (b[0] - a[0])));
  }
  CHECK_THROWS_AS(log_target_ratio(s, 3, std::vector<double>{0, 0},
                                   std::vector<double>{0, 0}),
                  std::out_of_range);
}

TEST_CASE("chains are deterministic and emit only valid configurations") {
  ModelSpec s = strip_spec(6, 0.12);
  Configuration init = random_insertion_init(s, 21);
  RunResult a = run_chain(s, init, 400, 4, 100, 21);
  RunResult b = run_chain(s, init, 400, 4, 100, 21);
  REQUIRE(a.snapshots.size() == b.snapshots.size());
  REQUIRE(a.snapshots.size() == 100);
  for (std::size_t i = 0; i < a.snapshots.size(); ++i) {
    CHECK(a.snapshots[i].wcm == b.snapshots[i].wcm);
    CHECK(a.snapshots[i].cfg.x == b.snapshots[i].cfg.x);
    CHECK(is_valid(s, a.snapshots[i].cfg));
    CHECK(a.snapshots[i].wcm ==
          doctest::Approx(weighted_cm(s, a.snapshots[i].cfg)).epsilon(1e-9));
  }
  CHECK(a.acceptance_rate > 0.05);
  CHECK(a.acceptance_rate < 0.95);
}

TEST_CASE("single object height marginal matches the shifted exponential") {
  // one disc of radius r with drift a: x1 - r is Exponential(2a)
  ModelSpec s = strip_spec(1, 0.1);
  s.lambda = 1.0;
  Configuration init;
  init.d = 2;
  init.x = {0.5, 0.0};
  ChainState state = make_chain(s, init, 99);
  for (int i = 0; i < 20000; ++i) mh_step(s, state, true);
  std::vector<double> xs;
  xs.reserve(60000);
  for (int i = 0; i < 60000; ++i) {
    mh_step(s, state, false);
    xs.push_back(state.cfg.center(0)[0] - 0.1);
  }
  const double ks =
      ks_distance(xs, [](double t) { return 1.0 - std::exp(-2.0 * t); });
  CHECK(ks < 0.05);
}

TEST_CASE("random insertion handles dense and mixed-radius instances") {
  ModelSpec dense = strip_spec(50, 0.08);
  Configuration c1 = random_insertion_init(dense, 3);
  CHECK(is_valid(dense, c1));

  ModelSpec mixed = strip_spec(20, 0.06);
  mixed.radii[0] = 0.5;
  mixed.validate();
  Configuration c2 = random_insertion_init(mixed, 4);
  CHECK(is_valid(mixed, c2));
}

TEST_CASE("anneal carries the chain through the schedule and tracks the best") {
  ModelSpec s = strip_spec(5, 0.15);
  const double sched[] = {2.0, 10.0, 50.0};
  AnnealResult r = anneal(s, sched, 400, 17);
  CHECK(is_valid(s, r.best_cfg, 1e-9));
  CHECK(is_valid(s, r.final_cfg, 1e-9));
  CHECK(r.best_wcm ==
        doctest::Approx(weighted_cm(s, r.best_cfg)).epsilon(1e-9));
  CHECK(r.best_wcm <= weighted_cm(s, r.final_cfg) + 1e-9);
  const double bad_sched[] = {10.0, 2.0};
  CHECK_THROWS_AS(anneal(s, bad_sched, 100, 1), std::invalid_argument);
}

TEST_CASE("diagnostics requires enough snapshots") {
  std::vector<Snapshot> few(50);
  CHECK_THROWS_AS(diagnostics(few), std::invalid_argument);
}
