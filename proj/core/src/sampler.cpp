#include "hardball/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "hardball/diagnostics.hpp"
#include "hardball/packing.hpp"

namespace hardball {

double log_target_ratio(const ModelSpec& spec, int k,
                        std::span<const double> old_c,
                        std::span<const double> new_c) {
  if (k < 0 || k >= spec.n()) throw std::out_of_range("object index");
  return -2.0 * spec.drift(k) * (new_c[0] - old_c[0]);
}

ChainState make_chain(const ModelSpec& spec, Configuration init,
                      std::uint64_t seed) {
  spec.validate();
  if (!is_valid(spec, init))
    throw std::invalid_argument("initial configuration is invalid");
  ChainState s;
  s.cfg = std::move(init);
  s.rng = CounterRng(seed);
  s.step_scale = spec.radii;
  s.accepts_k.assign(spec.n(), 0);
  s.proposals_k.assign(spec.n(), 0);
  s.wcm = weighted_cm(spec, s.cfg);
  s.index = std::make_unique<OverlapIndex>(spec, s.cfg);
  return s;
}

void mh_step(const ModelSpec& spec, ChainState& state, bool adapt,
             double target_accept) {
  const int n = spec.n();
  const int d = spec.d;
  const int k = int(state.rng.below(std::uint64_t(n)));
  double buf[8];
  if (d > 8) throw std::invalid_argument("dimension too large for sampler");
  auto old_c = state.cfg.center(k);
  const double s = state.step_scale[k];
  for (int i = 0; i < d; ++i) buf[i] = old_c[i] + s * state.rng.normal();
  std::span<const double> new_c(buf, std::size_t(d));

  ++state.proposals;
  ++state.proposals_k[k];
  bool accepted = false;
  if (spec.vessel.contains_ball(new_c, spec.radii[k]) &&
      state.index->placement_ok(state.cfg, k, new_c)) {
    const double lr = -2.0 * spec.drift(k) * (new_c[0] - old_c[0]);
    accepted = lr >= 0.0 || state.rng.uniform() < std::exp(lr);
  }
  if (accepted) {
    state.wcm += spec.alpha[k] * (new_c[0] - old_c[0]);
    auto c = state.cfg.center(k);
    for (int i = 0; i < d; ++i) c[i] = buf[i];
    state.index->moved(state.cfg, k);
    ++state.accepts;
    ++state.accepts_k[k];
  }
  if (adapt) {
    const double eta = 1.0 / std::sqrt(double(state.proposals_k[k]));
    double ls = std::log(state.step_scale[k]) +
                eta * ((accepted ? 1.0 : 0.0) - target_accept);
    ls = std::clamp(ls, std::log(1e-6 * spec.radii[k]),
                    std::log(1e3 * spec.radii[k]));
    state.step_scale[k] = std::exp(ls);
  }
  // Incremental observable accumulation drifts; recompute periodically.
  if (++state.steps_since_recompute >= 10000) {
    state.wcm = weighted_cm(spec, state.cfg);
    state.steps_since_recompute = 0;
  }
}

void mh_sweep(const ModelSpec& spec, ChainState& state, bool adapt,
              double target_accept) {
  for (int i = 0; i < spec.n(); ++i) mh_step(spec, state, adapt, target_accept);
  ++state.sweep;
}

RunResult run_chain(const ModelSpec& spec, const Configuration& init,
                    long sweeps, long thin, long burn_in, std::uint64_t seed) {
  if (thin < 1) throw std::invalid_argument("thin must be >= 1");
  if (sweeps < 0 || burn_in < 0)
    throw std::invalid_argument("sweeps and burn_in must be >= 0");
  ChainState state = make_chain(spec, init, seed);
  for (long i = 0; i < burn_in; ++i) mh_sweep(spec, state, /*adapt=*/true);
  // Adaptation frozen from here on so the chain is exactly stationary.
  state.accepts = state.proposals = 0;
  RunResult out;
  out.snapshots.reserve(std::size_t(sweeps / thin) + 1);
  for (long i = 1; i <= sweeps; ++i) {
    mh_sweep(spec, state, /*adapt=*/false);
    if (i % thin == 0) {
      Snapshot snap;
      snap.step = state.sweep;
      snap.t = double(state.sweep);
      snap.wcm = state.wcm;
      snap.surface = surface_height(spec, state.cfg);
      snap.cfg = state.cfg;
      out.snapshots.push_back(std::move(snap));
    }
  }
  out.acceptance_rate = state.acceptance_rate();
  out.step_scale = state.step_scale;
  return out;
}

void run_chain_inplace(const ModelSpec& spec, ChainState& state, long sweeps,
                       long thin, std::vector<Snapshot>& out) {
  for (long i = 1; i <= sweeps; ++i) {
    mh_sweep(spec, state, /*adapt=*/false);
    if (i % thin == 0) {
      Snapshot snap;
      snap.step = state.sweep;
      snap.t = double(state.sweep);
      snap.wcm = state.wcm;
      snap.surface = surface_height(spec, state.cfg);
      snap.cfg = state.cfg;
      out.push_back(std::move(snap));
    }
  }
}

AnnealResult anneal(const ModelSpec& spec,
                    std::span<const double> lambda_schedule,
                    long sweeps_per_stage, std::uint64_t seed,
                    std::optional<Configuration> init) {
  if (lambda_schedule.empty())
    throw std::invalid_argument("empty lambda schedule");
  for (std::size_t i = 1; i < lambda_schedule.size(); ++i)
    if (lambda_schedule[i] <= lambda_schedule[i - 1])
      throw std::invalid_argument("lambda schedule must be increasing");

  Configuration cfg =
      init ? std::move(*init) : random_insertion_init(spec, seed);
  AnnealResult result;
  result.best_cfg = cfg;
  result.best_wcm = weighted_cm(spec, cfg);

  ModelSpec stage = spec;
  for (std::size_t si = 0; si < lambda_schedule.size(); ++si) {
    stage.lambda = lambda_schedule[si];
    ChainState state = make_chain(stage, std::move(cfg), seed + 0x1000 * si);
    const long adapt_sweeps = std::max<long>(1, sweeps_per_stage / 5);
    for (long i = 0; i < adapt_sweeps; ++i) mh_sweep(stage, state, true);
    for (long i = 0; i < sweeps_per_stage; ++i) {
      mh_sweep(stage, state, false);
      if (state.wcm < result.best_wcm) {
        result.best_wcm = weighted_cm(stage, state.cfg);
        result.best_cfg = state.cfg;
      }
    }
    cfg = std::move(state.cfg);
  }
  result.final_cfg = std::move(cfg);
  return result;
}

ChainDiagnostics diagnostics(std::span<const Snapshot> snapshots,
                             double acceptance_rate) {
  if (snapshots.size() < 100)
    throw std::invalid_argument("need at least 100 snapshots");
  std::vector<double> wcm(snapshots.size());
  for (std::size_t i = 0; i < snapshots.size(); ++i) wcm[i] = snapshots[i].wcm;
  const AcfResult acf = autocorrelation(wcm);
  ChainDiagnostics d;
  d.tau = acf.tau;
  d.ess = acf.ess;
  d.acceptance_rate = acceptance_rate;
  d.converged = acf.converged;
  return d;
}

Configuration random_insertion_init(const ModelSpec& spec,
                                    std::uint64_t seed) {
  spec.validate();
  const int n = spec.n();
  const int d = spec.d;
  CounterRng rng(seed, 0xbeef);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return spec.radii[a] > spec.radii[b];
  });

  // Height budget from a loose area estimate, grown on failure.
  double area = 0.0;
  for (double r : spec.radii) area += std::pow(2 * r, double(d - 1));
  std::vector<double> lo, hi;
  spec.vessel.lateral_bounds(0.0, lo, hi);
  double width = 1.0;
  for (int i = 0; i < d - 1; ++i) width *= std::max(1e-9, hi[i] - lo[i]);
  double hcap = 2.0 * area / width + 4.0 * spec.max_radius();

  Configuration cfg;
  cfg.d = d;
  cfg.x.assign(std::size_t(n) * d, 0.0);
  std::vector<char> placed(n, 0);
  std::vector<double> c(d), lat(d - 1);

  bool ok = true;
  for (int k : order) {
    const double r = spec.radii[k];
    bool done = false;
    double cap = hcap;
    for (long attempt = 0; attempt < 100000; ++attempt) {
      if (attempt > 0 && attempt % 5000 == 0) cap *= 1.5;
      for (int i = 0; i < d - 1; ++i) {
        const double a = lo[i] + r, b = hi[i] - r;
        if (a > b) break;
        lat[i] = a + (b - a) * rng.uniform();
        c[i + 1] = lat[i];
      }
      const double base = spec.vessel.floor_height(lat, r);
      c[0] = base + cap * rng.uniform();
      if (!spec.vessel.contains_ball(c, r)) continue;
      bool clash = false;
      for (int j = 0; j < n && !clash; ++j) {
        if (!placed[j]) continue;
        const double need = r + spec.radii[j];
        if (distance_sq(c, cfg.center(j)) < need * need) clash = true;
      }
      if (clash) continue;
      auto dst = cfg.center(k);
      std::copy(c.begin(), c.end(), dst.begin());
      placed[k] = 1;
      done = true;
      break;
    }
    if (!done) {
      ok = false;
      break;
    }
  }
  if (ok) return cfg;

  // Dense fallback: seat everything on a honeycomb lattice sized by the
  // largest radius (planar vessels only).
  if (d != 2)
    throw std::runtime_error("random insertion failed and no fallback for d > 2");
  HoneycombSpec h{spec.max_radius() + 1e-9,
                  {spec.vessel.floor_height(std::vector<double>{0.0},
                                            spec.max_radius()),
                   0.0}};
  auto sites = honeycomb_in_region(h, spec.vessel, 4L * n + 16);
  if (sites.size() < std::size_t(n))
    throw std::runtime_error("honeycomb seeding could not place all objects");
  for (int i = 0; i < n; ++i) {
    auto dst = cfg.center(order[i]);
    dst[0] = sites[i][0];
    dst[1] = sites[i][1];
  }
  if (!is_valid(spec, cfg))
    throw std::runtime_error("honeycomb seeding produced an invalid start");
  return cfg;
}

}  // namespace hardball
