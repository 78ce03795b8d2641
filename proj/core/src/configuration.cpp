#include "hardball/configuration.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hardball {

double ModelSpec::max_radius() const {
  return *std::max_element(radii.begin(), radii.end());
}

double ModelSpec::min_radius() const {
  return *std::min_element(radii.begin(), radii.end());
}

void ModelSpec::validate() const {
  if (d < 2) throw std::invalid_argument("dimension must be >= 2");
  if (vessel.dim != d) throw std::invalid_argument("vessel dimension mismatch");
  if (radii.empty()) throw std::invalid_argument("at least one object required");
  if (alpha.size() != radii.size() || mass.size() != radii.size())
    throw std::invalid_argument("radii/alpha/mass lengths must match");
  if (lambda <= 0) throw std::invalid_argument("lambda must be > 0");
  for (std::size_t k = 0; k < radii.size(); ++k) {
    if (radii[k] <= 0) throw std::invalid_argument("radii must be > 0");
    if (alpha[k] <= 0) throw std::invalid_argument("weights must be > 0");
    if (mass[k] <= 0) throw std::invalid_argument("masses must be > 0");
  }
}

ModelSpec ModelSpec::uniform(int d, Vessel vessel, int n, double radius,
                             double alpha, double lambda) {
  ModelSpec s;
  s.d = d;
  s.vessel = std::move(vessel);
  s.radii.assign(n, radius);
  s.alpha.assign(n, alpha);
  s.mass.assign(n, 1.0);
  s.lambda = lambda;
  s.validate();
  return s;
}

namespace {

// Much-larger balls would blow up the grid cell size, so they are checked
// directly instead of being indexed.
double grid_radius_cut(const ModelSpec& spec) {
  std::vector<double> r = spec.radii;
  std::nth_element(r.begin(), r.begin() + r.size() / 2, r.end());
  return 2.0 * r[r.size() / 2];
}

}  // namespace

OverlapIndex::OverlapIndex(const ModelSpec& spec, const Configuration& cfg)
    : spec_(&spec), grid_(spec.d, 1.0) {
  const double cut = grid_radius_cut(spec);
  in_grid_.assign(spec.n(), 0);
  for (int k = 0; k < spec.n(); ++k) {
    if (spec.radii[k] <= cut) {
      in_grid_[k] = 1;
      max_grid_radius_ = std::max(max_grid_radius_, spec.radii[k]);
    }
  }
  if (max_grid_radius_ == 0.0) {
    // All balls oversized relative to the median: index everything.
    in_grid_.assign(spec.n(), 1);
    max_grid_radius_ = spec.max_radius();
  }
  grid_ = NeighborGrid(spec.d, 2.0 * max_grid_radius_);
  for (int k = 0; k < spec.n(); ++k) {
    if (in_grid_[k])
      grid_.insert(k, cfg.center(k));
    else
      big_.push_back(k);
  }
}

void OverlapIndex::candidates(std::span<const double> c, int k,
                              std::vector<int>& out) const {
  grid_.query_range(c, spec_->radii[k] + max_grid_radius_, out);
  for (int j : big_)
    if (j != k) out.push_back(j);
}

bool OverlapIndex::placement_ok(const Configuration& cfg, int k,
                                std::span<const double> c, double tol) const {
  candidates(c, k, scratch_);
  for (int j : scratch_) {
    if (j == k) continue;
    const double rsum = spec_->radii[k] + spec_->radii[j] - tol;
    if (rsum > 0 && distance_sq(c, cfg.center(j)) < rsum * rsum) return false;
  }
  return true;
}

void OverlapIndex::moved(const Configuration& cfg, int k) {
  if (in_grid_[k]) grid_.move(k, cfg.center(k));
}

bool is_valid(const ModelSpec& spec, const Configuration& cfg, double tol) {
  if (cfg.d != spec.d || cfg.size() != spec.n())
    throw std::invalid_argument("configuration shape mismatch");
  for (int k = 0; k < spec.n(); ++k)
    if (!spec.vessel.contains_ball(cfg.center(k), spec.radii[k], tol))
      return false;
  OverlapIndex idx(spec, cfg);
  std::vector<int> cand;
  for (int k = 0; k < spec.n(); ++k) {
    idx.candidates(cfg.center(k), k, cand);
    for (int j : cand) {
      if (j <= k) continue;
      const double rsum = spec.radii[k] + spec.radii[j] - tol;
      if (rsum > 0 &&
          distance_sq(cfg.center(k), cfg.center(j)) < rsum * rsum)
        return false;
    }
  }
  return true;
}

double weighted_cm(const ModelSpec& spec, const Configuration& cfg) {
  double s = 0.0;
  for (int k = 0; k < spec.n(); ++k) s += spec.alpha[k] * cfg.center(k)[0];
  return s;
}

double surface_height(const ModelSpec& spec, const Configuration& cfg,
                      int from) {
  double s = -std::numeric_limits<double>::infinity();
  for (int k = from; k < spec.n(); ++k)
    s = std::max(s, cfg.center(k)[0] + spec.radii[k]);
  return s;
}

Observables compute_observables(const ModelSpec& spec,
                                const Configuration& cfg) {
  Observables o;
  o.wcm = weighted_cm(spec, cfg);
  o.surface = surface_height(spec, cfg);
  o.top_of_object.resize(spec.n());
  for (int k = 0; k < spec.n(); ++k)
    o.top_of_object[k] = cfg.center(k)[0] + spec.radii[k];
  o.depth_rank.resize(spec.n());
  std::iota(o.depth_rank.begin(), o.depth_rank.end(), 0);
  std::sort(o.depth_rank.begin(), o.depth_rank.end(), [&](int a, int b) {
    return cfg.center(a)[0] < cfg.center(b)[0];
  });
  return o;
}

std::vector<std::pair<int, int>> ordering_violations(const ModelSpec& spec,
                                                     const Configuration& cfg,
                                                     double delta) {
  std::vector<std::pair<int, int>> out;
  for (int j = 0; j < spec.n(); ++j)
    for (int k = 0; k < spec.n(); ++k) {
      if (j == k || spec.alpha[j] <= spec.alpha[k]) continue;
      if (cfg.center(j)[0] >= cfg.center(k)[0] + delta) out.emplace_back(j, k);
    }
  return out;
}

namespace {

struct Candidate {
  double x, y;
};

}  // namespace

std::optional<std::vector<double>> can_translate_down(const ModelSpec& spec,
                                                      const Configuration& cfg,
                                                      int k, double delta) {
  if (spec.d != 2) throw std::invalid_argument("can_translate_down needs d = 2");
  if (!spec.vessel.is_half_cylinder())
    throw std::invalid_argument("can_translate_down needs a HalfCylinder vessel");
  if (k < 0 || k >= spec.n()) throw std::out_of_range("object index");
  if (delta <= 0) throw std::invalid_argument("delta must be > 0");

  const double rk = spec.radii[k];
  const double wall = spec.vessel.half_cylinder_shape().half_width - rk;
  if (wall < 0) return std::nullopt;
  const double xk = cfg.center(k)[0];
  const double yk = cfg.center(k)[1];
  const double h = xk - delta;  // only placements at or below this height count
  if (h < rk - 1e-12) return std::nullopt;

  // Candidate circles are inflated by a hair so that accepted placements
  // have strictly positive clearance.
  constexpr double kPad = 1e-9;
  const int n = spec.n();
  std::vector<double> cx(n), cy(n), R(n);
  std::vector<int> obs;
  for (int j = 0; j < n; ++j) {
    if (j == k) continue;
    cx[j] = cfg.center(j)[0];
    cy[j] = cfg.center(j)[1];
    R[j] = rk + spec.radii[j] + kPad;
    obs.push_back(j);
  }

  auto feasible = [&](double x, double y) {
    if (x < rk - 1e-12 || x > h + 1e-12) return false;
    if (std::abs(y) > wall + 1e-12) return false;
    for (int j : obs) {
      const double dx = x - cx[j], dy = y - cy[j];
      const double need = rk + spec.radii[j];
      if (dx * dx + dy * dy < need * need) return false;
    }
    return true;
  };

  bool found = false;
  Candidate best{0, 0};
  auto consider = [&](double x, double y) {
    if (!feasible(x, y)) return;
    if (!found || x < best.x - 1e-15 ||
        (std::abs(x - best.x) <= 1e-15 &&
         std::hypot(x - xk, y - yk) < std::hypot(best.x - xk, best.y - yk))) {
      best = {x, y};
      found = true;
    }
  };

  // Floor: merge blocked y-intervals and take the free point nearest y_k.
  {
    std::vector<std::pair<double, double>> blocked;
    for (int j : obs) {
      const double dx = cx[j] - rk;
      if (std::abs(dx) >= R[j]) continue;
      const double q = std::sqrt(R[j] * R[j] - dx * dx);
      blocked.emplace_back(cy[j] - q, cy[j] + q);
    }
    std::sort(blocked.begin(), blocked.end());
    double cursor = -wall;
    auto try_interval = [&](double lo, double hi) {
      if (lo > hi) return;
      consider(rk, std::clamp(yk, lo, hi));
    };
    for (const auto& [lo, hi] : blocked) {
      try_interval(cursor, std::min(lo, wall));
      cursor = std::max(cursor, hi);
      if (cursor > wall) break;
    }
    try_interval(cursor, wall);
  }

  // Circle poles (resting directly above/below an obstacle).
  for (int j : obs) {
    consider(cx[j] + R[j], cy[j]);
    consider(cx[j] - R[j], cy[j]);
  }

  // Circle/wall and circle/floor-band intersections.
  for (int j : obs) {
    if (cx[j] - R[j] > h + 1e-12) continue;
    for (double w : {wall, -wall}) {
      const double dy = w - cy[j];
      if (std::abs(dy) > R[j]) continue;
      const double dx = std::sqrt(R[j] * R[j] - dy * dy);
      consider(cx[j] - dx, w);
      consider(cx[j] + dx, w);
    }
  }

  // Wall/floor corners.
  consider(rk, wall);
  consider(rk, -wall);

  // Pairwise circle intersections, pruned to circles reaching below h.
  for (std::size_t a = 0; a < obs.size(); ++a) {
    const int i = obs[a];
    if (cx[i] - R[i] > h + 1e-12) continue;
    for (std::size_t b = a + 1; b < obs.size(); ++b) {
      const int j = obs[b];
      if (cx[j] - R[j] > h + 1e-12) continue;
      const double dx = cx[j] - cx[i], dy = cy[j] - cy[i];
      const double d2 = dx * dx + dy * dy;
      const double d = std::sqrt(d2);
      if (d < 1e-15 || d > R[i] + R[j] || d < std::abs(R[i] - R[j])) continue;
      const double t = (d2 + R[i] * R[i] - R[j] * R[j]) / (2 * d);
      const double q2 = R[i] * R[i] - t * t;
      const double q = q2 > 0 ? std::sqrt(q2) : 0.0;
      const double mx = cx[i] + t * dx / d, my = cy[i] + t * dy / d;
      consider(mx - q * dy / d, my + q * dx / d);
      consider(mx + q * dy / d, my - q * dx / d);
    }
  }

  if (!found) return std::nullopt;
  return std::vector<double>{best.x - xk, best.y - yk};
}

}  // namespace hardball
