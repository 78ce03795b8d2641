#include <cmath>
#include <vector>

#include <doctest.h>

#include "hardball/dynamics.hpp"

using namespace hardball;

namespace {

ModelSpec strip_spec(int n, double radius, double half_width = 1.0) {
  return ModelSpec::uniform(2, Vessel::half_cylinder(2, half_width), n, radius);
}

}  // namespace

TEST_CASE("inertia transform round trips and scales per object") {
  ModelSpec s = strip_spec(3, 0.1);
  s.mass = {1.0, 2.0, 0.5};
  Configuration c;
  c.d = 2;
  c.x = {0.3, 0.1, 0.7, -0.2, 1.1, 0.4};
  Configuration f = inertia_transform(s, c, true);
  CHECK(f.center(1)[0] == doctest::Approx(1.4));
  CHECK(f.center(1)[1] == doctest::Approx(-0.4));
  CHECK(f.center(2)[0] == doctest::Approx(0.55));
  Configuration back = inertia_transform(s, f, false);
  for (std::size_t i = 0; i < c.x.size(); ++i)
    CHECK(back.x[i] == doctest::Approx(c.x[i]).epsilon(1e-14));
}

TEST_CASE("default step scales with the smallest radius") {
  ModelSpec s = strip_spec(2, 0.1);
  s.radii[1] = 0.05;
  CHECK(default_dt(s) == doctest::Approx(1e-4 * 0.05 * 0.05));
}

TEST_CASE("steps are deterministic and preserve validity") {
  ModelSpec s = strip_spec(8, 0.15);
  DynamicsParams params;
  Configuration cfg = random_insertion_init(s, 51);
  CounterRng r1(123), r2(123);
  Configuration a = cfg, b = cfg;
  for (int i = 0; i < 200; ++i) {
    a = em_step(s, a, params, r1);
    b = em_step(s, b, params, r2);
    CHECK(is_valid(s, a, 1e-9));
  }
  CHECK(a.x == b.x);
}

TEST_CASE("free motion has the declared drift and diffusion") {
  ModelSpec s = strip_spec(1, 0.1);
  s.lambda = 2.0;  // drift magnitude 2
  DynamicsParams params;
  params.dt = 1e-3;
  const double T = 0.25;
  const int steps = int(T / params.dt), paths = 300;
  double sum = 0.0, sum2 = 0.0;
  for (int p = 0; p < paths; ++p) {
    CounterRng rng(1000 + p);
    Configuration c;
    c.d = 2;
    c.x = {50.0, 0.0};  // far from floor and walls
    for (int i = 0; i < steps; ++i) c = em_step(s, c, params, rng);
    const double dx = c.center(0)[0] - 50.0;
    sum += dx;
    sum2 += dx * dx;
  }
  const double m = sum / paths;
  const double var = sum2 / paths - m * m;
  // mean -a T = -0.5, sd of the path mean = sqrt(T/paths) ~ 0.029
  CHECK(std::abs(m + 0.5) < 4.0 * std::sqrt(T / paths));
  CHECK(var == doctest::Approx(T).epsilon(0.35));
}

namespace {

// Tangent vertical pair; the top ball is driven into the bottom one by a
// deterministic push I = a_top dt. The projection keeps the pair in contact,
// so both balls end up displaced down by w_bottom * I, where w_bottom is the
// bottom ball's push share. Averaging over seeds removes the dt^(1/2) noise.
double mean_common_drop(double m_bottom, double m_top, bool inertia_mode) {
  ModelSpec s = strip_spec(2, 0.25);
  s.mass = {m_bottom, m_top};
  s.alpha = {1e-9, 1e6};  // only the top ball is pushed
  DynamicsParams params;
  params.dt = 1e-8;  // push 0.01, per-coordinate noise about 1e-4
  params.inertia_mode = inertia_mode;
  double sum = 0.0;
  const int reps = 50;
  for (int i = 0; i < reps; ++i) {
    Configuration c;
    c.d = 2;
    c.x = {50.0, 0.0, 50.5, 0.0};  // exactly tangent in binary floating point
    CounterRng rng(900 + i);
    Configuration out = em_step(s, c, params, rng);
    const double drop0 = 50.0 - out.center(0)[0];
    const double drop1 = 50.5 - out.center(1)[0];
    // contact is maintained through the resolution
    if (std::abs(drop0 - drop1) > 1e-3) return -1.0;
    sum += drop0;
  }
  return sum / reps;
}

}  // namespace

TEST_CASE("pair projection splits pushes by inverse squared mass") {
  // masses (1, 2): bottom share (1/1) / (1/1 + 1/4) = 0.8 of the 0.01 push
  const double drop = mean_common_drop(1.0, 2.0, true);
  CHECK(drop == doctest::Approx(0.008).epsilon(0.05));
  // a (1/m) split would give 2/3, clearly outside the band above
  CHECK(std::abs(drop - 0.01 * 2.0 / 3.0) > 0.0008);
  // mass-scaled displacements are then in ratio (1/m_j) : (1/m_k)
  const double w_bottom = drop / 0.01;
  const double scaled_ratio = (w_bottom * 1.0) / ((1.0 - w_bottom) * 2.0);
  CHECK(scaled_ratio == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("equal masses split a collision push symmetrically") {
  const double drop = mean_common_drop(1.0, 1.0, true);
  CHECK(drop == doctest::Approx(0.005).epsilon(0.05));
  // without inertia mode, masses are ignored entirely
  const double drop_plain = mean_common_drop(1.0, 3.0, false);
  CHECK(drop_plain == doctest::Approx(0.005).epsilon(0.05));
}

TEST_CASE("simulate emits the initial state and a fixed schedule") {
  ModelSpec s = strip_spec(4, 0.12);
  Configuration init = random_insertion_init(s, 9);
  DynamicsParams params;
  params.dt = 1e-4;
  auto snaps = simulate(s, init, params, 0.02, 0.002, 31);
  REQUIRE(snaps.size() == 11);
  CHECK(snaps.front().t == 0.0);
  CHECK(snaps.front().cfg.x == init.x);
  CHECK(snaps.back().t == doctest::Approx(0.02));
  for (const auto& sn : snaps) {
    CHECK(is_valid(s, sn.cfg, 1e-9));
    CHECK(sn.wcm == doctest::Approx(weighted_cm(s, sn.cfg)).epsilon(1e-9));
  }
  auto again = simulate(s, init, params, 0.02, 0.002, 31);
  REQUIRE(again.size() == snaps.size());
  for (std::size_t i = 0; i < snaps.size(); ++i)
    CHECK(again[i].cfg.x == snaps[i].cfg.x);
}
