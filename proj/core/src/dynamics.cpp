#include "hardball/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace hardball {

double default_dt(const ModelSpec& spec) {
  const double r = spec.min_radius();
  return 1e-4 * r * r;
}

Configuration inertia_transform(const ModelSpec& spec,
                                const Configuration& cfg, bool forward) {
  if (cfg.d != spec.d || cfg.size() != spec.n())
    throw std::invalid_argument("configuration shape mismatch");
  Configuration out = cfg;
  for (int k = 0; k < spec.n(); ++k) {
    const double f = forward ? spec.mass[k] : 1.0 / spec.mass[k];
    for (double& v : out.center(k)) v *= f;
  }
  return out;
}

namespace {

// Clamp one ball back into the vessel. Lateral coordinates are clamped to
// the walls (or the declared box), then the ball is lifted to the floor.
void clamp_to_vessel(const ModelSpec& spec, int k, std::span<double> c,
                     std::vector<double>& lat) {
  const double r = spec.radii[k];
  const int d = spec.d;
  if (spec.vessel.is_half_cylinder()) {
    const double w = spec.vessel.half_cylinder_shape().half_width - r;
    for (int i = 1; i < d; ++i) c[i] = std::clamp(c[i], -w, w);
    c[0] = std::max(c[0], r);
    return;
  }
  const auto& g = spec.vessel.graph_shape();
  for (int i = 1; i < d; ++i)
    c[i] = std::clamp(c[i], g.box_lo[i - 1], g.box_hi[i - 1]);
  lat.assign(c.begin() + 1, c.end());
  c[0] = std::max(c[0], spec.vessel.floor_height(lat, r));
}

void em_step_inplace(const ModelSpec& spec, const DynamicsParams& params,
                     double dt, Configuration& cfg, CounterRng& rng) {
  const int n = spec.n();
  const int d = spec.d;
  const double sqdt = std::sqrt(dt);

  for (int k = 0; k < n; ++k) {
    auto c = cfg.center(k);
    const double m = params.inertia_mode ? spec.mass[k] : 1.0;
    c[0] -= spec.drift(k) * dt;
    for (int i = 0; i < d; ++i) c[i] += (sqdt / m) * rng.normal();
  }

  const double tol = params.projection_tol;
  std::vector<double> lat;
  for (int iter = 0; iter < params.max_projection_iters; ++iter) {
    for (int k = 0; k < n; ++k) clamp_to_vessel(spec, k, cfg.center(k), lat);

    int bj = -1, bk = -1;
    double worst = tol;
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const double rsum = spec.radii[j] + spec.radii[k];
        const double d2 = distance_sq(cfg.center(j), cfg.center(k));
        if (d2 < rsum * rsum) {
          const double depth = rsum - std::sqrt(d2);
          if (depth > worst) {
            worst = depth;
            bj = j;
            bk = k;
          }
        }
      }
    if (bj < 0) {
      bool inside = true;
      for (int k = 0; k < n && inside; ++k)
        inside = spec.vessel.contains_ball(cfg.center(k), spec.radii[k],
                                           std::max(tol, 1e-12));
      if (inside) return;
      continue;
    }

    auto cj = cfg.center(bj);
    auto ck = cfg.center(bk);
    const double mj = params.inertia_mode ? spec.mass[bj] : 1.0;
    const double mk = params.inertia_mode ? spec.mass[bk] : 1.0;
    // Normal reflection of the mass-scaled coordinates: original-space
    // weights 1/m^2, mass-scaled displacements in ratio (1/m_j):(1/m_k).
    const double wj = (1.0 / (mj * mj)) / (1.0 / (mj * mj) + 1.0 / (mk * mk));
    const double rsum = spec.radii[bj] + spec.radii[bk];
    const double dist = distance(cj, ck);
    const double push = rsum * (1.0 + 1e-12) - dist;
    if (dist < 1e-14) {
      // Coincident centers: separate along the axis.
      cj[0] += wj * push;
      ck[0] -= (1.0 - wj) * push;
      continue;
    }
    for (int i = 0; i < d; ++i) {
      const double u = (cj[i] - ck[i]) / dist;
      cj[i] += wj * push * u;
      ck[i] -= (1.0 - wj) * push * u;
    }
  }
  throw ProjectionFailure("overlap projection did not settle");
}

void advance(const ModelSpec& spec, const DynamicsParams& params, double dt,
             Configuration& cfg, CounterRng& rng, int depth) {
  Configuration saved = cfg;
  try {
    em_step_inplace(spec, params, dt, cfg, rng);
  } catch (const ProjectionFailure&) {
    if (depth >= params.max_halvings) throw;
    cfg = std::move(saved);
    advance(spec, params, dt / 2, cfg, rng, depth + 1);
    advance(spec, params, dt / 2, cfg, rng, depth + 1);
  }
}

}  // namespace

Configuration em_step(const ModelSpec& spec, const Configuration& cfg,
                      const DynamicsParams& params, CounterRng& rng) {
  spec.validate();
  if (!is_valid(spec, cfg))
    throw std::invalid_argument("configuration is invalid");
  Configuration out = cfg;
  const double dt = params.dt > 0 ? params.dt : default_dt(spec);
  em_step_inplace(spec, params, dt, out, rng);
  return out;
}

std::vector<Snapshot> simulate(const ModelSpec& spec, const Configuration& init,
                               const DynamicsParams& params, double T,
                               double observe_every, std::uint64_t seed) {
  spec.validate();
  if (!is_valid(spec, init))
    throw std::invalid_argument("initial configuration is invalid");
  if (T < 0 || observe_every <= 0)
    throw std::invalid_argument("need T >= 0 and observe_every > 0");
  const double dt = params.dt > 0 ? params.dt : default_dt(spec);
  const long steps = long(std::llround(T / dt));
  const long thin = std::max<long>(1, long(std::llround(observe_every / dt)));

  Configuration cfg = init;
  CounterRng rng(seed, 0xd15c);
  std::vector<Snapshot> out;
  out.reserve(std::size_t(steps / thin) + 2);
  auto emit = [&](long step) {
    Snapshot s;
    s.step = step;
    s.t = double(step) * dt;
    s.wcm = weighted_cm(spec, cfg);
    s.surface = surface_height(spec, cfg);
    s.cfg = cfg;
    out.push_back(std::move(s));
  };
  emit(0);
  for (long step = 1; step <= steps; ++step) {
    advance(spec, params, dt, cfg, rng, 0);
    if (step % thin == 0) emit(step);
  }
  return out;
}

}  // namespace hardball
