#ifndef HARDBALL_DYNAMICS_HPP_
#define HARDBALL_DYNAMICS_HPP_

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hardball/sampler.hpp"

namespace hardball {

struct DynamicsParams {
  double dt = 0.0;  // 0 selects default_dt(spec)
  double projection_tol = 1e-10;
  int max_projection_iters = 400;
  bool inertia_mode = false;  // honor spec.mass; otherwise masses act as 1
  int max_halvings = 4;       // step-splitting retries on projection failure
};

struct ProjectionFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Default time step, 1e-4 * (smallest radius)^2, so a free step moves a
// ball by a small fraction of its radius.
double default_dt(const ModelSpec& spec);

// Mass scaling of the state: forward maps object k's center to m_k x^k,
// inverse divides. The inertial process is normally reflected in the image
// of the configuration space under this map.
Configuration inertia_transform(const ModelSpec& spec, const Configuration& cfg,
                                bool forward);

// One Euler-Maruyama step of the reflected dynamics. Object k drifts by
// -a_k dt along x_1 and diffuses with standard deviation sqrt(dt) / m_k per
// coordinate; overlaps and wall violations are then removed by iterated
// projection, deepest pair first. A pair resolution splits the separation so
// that the mass-scaled displacements are in ratio (1/m_j) : (1/m_k), which
// is normal reflection of the mass-scaled coordinates (in the original
// coordinates the split is (1/m_j^2) : (1/m_k^2)). Throws ProjectionFailure
// if the projection does not settle within max_projection_iters.
Configuration em_step(const ModelSpec& spec, const Configuration& cfg,
                      const DynamicsParams& params, CounterRng& rng);

// Trajectory of duration T from `init`, emitting a snapshot at t = 0 and
// then every observe_every of time. A failed projection is retried with the
// step split into halves, up to params.max_halvings levels; past that the
// failure propagates.
std::vector<Snapshot> simulate(const ModelSpec& spec, const Configuration& init,
                               const DynamicsParams& params, double T,
                               double observe_every, std::uint64_t seed);

}  // namespace hardball

#endif  // HARDBALL_DYNAMICS_HPP_
