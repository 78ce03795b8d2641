#include <cmath>
#include <cstdint>
#include <vector>

#include <benchmark/benchmark.h>

#include "hardball/dynamics.hpp"
#include "hardball/packing.hpp"
#include "hardball/sampler.hpp"

using namespace hardball;

namespace {

ModelSpec strip_spec(int n, double radius) {
  return ModelSpec::uniform(2, Vessel::half_cylinder(2, 1.0), n, radius);
}

void BM_mh_sweep(benchmark::State& state) {
  const int n = int(state.range(0));
  const double radius = 0.9 / std::sqrt(double(n));  // roughly constant density
  ModelSpec spec = strip_spec(n, radius);
  spec.lambda = 10.0;
  ChainState chain = make_chain(spec, random_insertion_init(spec, 1), 1);
  for (int i = 0; i < 200; ++i) mh_sweep(spec, chain, true);
  for (auto _ : state) {
    mh_sweep(spec, chain);
    benchmark::DoNotOptimize(chain.wcm);
  }
  state.SetItemsProcessed(state.iterations() * n);
}

void BM_em_step(benchmark::State& state) {
  const int n = int(state.range(0));
  const double radius = 0.9 / std::sqrt(double(n));
  ModelSpec spec = strip_spec(n, radius);
  DynamicsParams params;
  Configuration cfg = random_insertion_init(spec, 2);
  CounterRng rng(2);
  for (auto _ : state) {
    cfg = em_step(spec, cfg, params, rng);
    benchmark::DoNotOptimize(cfg.x.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}

void BM_placement_ok(benchmark::State& state) {
  const int n = int(state.range(0));
  ModelSpec spec = strip_spec(n, 0.9 / std::sqrt(double(n)));
  Configuration cfg = random_insertion_init(spec, 3);
  OverlapIndex index(spec, cfg);
  CounterRng rng(3);
  std::vector<double> c(2);
  int k = 0;
  for (auto _ : state) {
    k = int(rng.below(std::uint64_t(n)));
    auto cur = cfg.center(k);
    c[0] = cur[0] + 0.01 * rng.normal();
    c[1] = cur[1] + 0.01 * rng.normal();
    benchmark::DoNotOptimize(index.placement_ok(cfg, k, c));
  }
}

void BM_random_insertion(benchmark::State& state) {
  const int n = int(state.range(0));
  ModelSpec spec = strip_spec(n, 0.9 / std::sqrt(double(n)));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    Configuration cfg = random_insertion_init(spec, ++seed);
    benchmark::DoNotOptimize(cfg.x.data());
  }
}

void BM_honeycomb(benchmark::State& state) {
  HoneycombSpec h;
  h.rho = 0.25;
  Vessel box = Vessel::half_cylinder(2, double(state.range(0)));
  for (auto _ : state) {
    auto centers = honeycomb_in_region(h, box, 20000);
    benchmark::DoNotOptimize(centers.data());
  }
}

BENCHMARK(BM_mh_sweep)->Arg(10)->Arg(50)->Arg(200);
BENCHMARK(BM_em_step)->Arg(10)->Arg(50)->Arg(200);
BENCHMARK(BM_placement_ok)->Arg(50)->Arg(500);
BENCHMARK(BM_random_insertion)->Arg(50)->Arg(200);
BENCHMARK(BM_honeycomb)->Arg(10)->Arg(40);

}  // namespace

BENCHMARK_MAIN();
