#ifndef HARDBALL_SAMPLER_HPP_
#define HARDBALL_SAMPLER_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "hardball/configuration.hpp"
#include "hardball/rng.hpp"

namespace hardball {

// One emitted state of a chain or trajectory.
struct Snapshot {
  long step = 0;    // sweep index (sampler) or step index (dynamics)
  double t = 0.0;   // physical time; equals `step` for the sampler
  double wcm = 0.0;
  double surface = 0.0;
  Configuration cfg;
};

struct ChainState {
  Configuration cfg;
  CounterRng rng{0};
  std::vector<double> step_scale;       // per-object proposal stddev
  std::vector<long> accepts_k, proposals_k;
  long accepts = 0, proposals = 0;
  long sweep = 0;
  double wcm = 0.0;                     // incrementally maintained
  long steps_since_recompute = 0;
  std::unique_ptr<OverlapIndex> index;  // tracks cfg

  double acceptance_rate() const {
    return proposals ? double(accepts) / double(proposals) : 0.0;
  }
};

// Log ratio of the target density exp(2 x . v) when object k moves from
// old_c to new_c: -2 a_k (new_1 - old_1). The density factorizes over
// coordinates, so only the moved axis coordinate enters.
double log_target_ratio(const ModelSpec& spec, int k,
                        std::span<const double> old_c,
                        std::span<const double> new_c);

ChainState make_chain(const ModelSpec& spec, Configuration init,
                      std::uint64_t seed);

// One Metropolis step: uniform object choice, isotropic Gaussian proposal,
// hard-core rejection, accept with min(1, exp(log_target_ratio)). When
// `adapt` is set, step_scale is nudged toward target_accept (Robbins-Monro
// on log step_scale); adaptation must be frozen outside burn-in.
void mh_step(const ModelSpec& spec, ChainState& state, bool adapt = false,
             double target_accept = 0.3);

void mh_sweep(const ModelSpec& spec, ChainState& state, bool adapt = false,
              double target_accept = 0.3);

struct RunResult {
  std::vector<Snapshot> snapshots;
  double acceptance_rate = 0.0;
  std::vector<double> step_scale;
};

// `sweeps` post-burn-in sweeps of N steps each, emitting every `thin`-th
// configuration. Step scales adapt during burn-in only. Deterministic given
// the seed.
RunResult run_chain(const ModelSpec& spec, const Configuration& init,
                    long sweeps, long thin, long burn_in, std::uint64_t seed);

// Continue an existing chain (no adaptation), appending snapshots.
void run_chain_inplace(const ModelSpec& spec, ChainState& state, long sweeps,
                       long thin, std::vector<Snapshot>& out);

struct AnnealResult {
  Configuration final_cfg;  // end of the last stage
  Configuration best_cfg;   // lowest weighted cm seen anywhere
  double best_wcm = 0.0;
};

// Runs the chain at each drift scale of the increasing schedule, carrying
// the configuration forward; tracks the lowest weighted center of mass seen.
AnnealResult anneal(const ModelSpec& spec,
                    std::span<const double> lambda_schedule,
                    long sweeps_per_stage, std::uint64_t seed,
                    std::optional<Configuration> init = std::nullopt);

struct ChainDiagnostics {
  double tau = 0.0;  // integrated autocorrelation of wcm
  double ess = 0.0;
  double acceptance_rate = 0.0;
  bool converged = false;
};

// Windowed autocorrelation of the weighted-center-of-mass series. Requires
// at least 100 snapshots.
ChainDiagnostics diagnostics(std::span<const Snapshot> snapshots,
                             double acceptance_rate = 0.0);

// Sequential random insertion; falls back to honeycomb-seeded placement for
// dense instances. Throws if no valid configuration is found.
Configuration random_insertion_init(const ModelSpec& spec, std::uint64_t seed);

}  // namespace hardball

#endif  // HARDBALL_SAMPLER_HPP_
