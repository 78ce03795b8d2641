#ifndef HARDBALL_CONFIGURATION_HPP_
#define HARDBALL_CONFIGURATION_HPP_

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hardball/geometry.hpp"

namespace hardball {

// N hard-core balls in a vessel. Per-object drift magnitudes are
// a_k = lambda * alpha_k (the weight/scale parametrization); radii are radii,
// not diameters.
struct ModelSpec {
  int d = 2;
  Vessel vessel;
  std::vector<double> radii;
  std::vector<double> alpha;
  std::vector<double> mass;  // all 1 unless inertia is modeled
  double lambda = 1.0;

  int n() const { return int(radii.size()); }
  double drift(int k) const { return lambda * alpha[k]; }
  double max_radius() const;
  double min_radius() const;

  // Throws std::invalid_argument on any violated invariant (positivity,
  // matching lengths, vessel dimension).
  void validate() const;

  static ModelSpec uniform(int d, Vessel vessel, int n, double radius,
                           double alpha = 1.0, double lambda = 1.0);
};

struct Configuration {
  int d = 2;
  std::vector<double> x;  // flat centers, stride d

  int size() const { return d == 0 ? 0 : int(x.size()) / d; }
  std::span<const double> center(int k) const {
    return {x.data() + std::size_t(k) * d, std::size_t(d)};
  }
  std::span<double> center(int k) {
    return {x.data() + std::size_t(k) * d, std::size_t(d)};
  }
};

struct Observables {
  double wcm = 0.0;      // sum_k alpha_k x^k_1
  double surface = 0.0;  // sup_k (x^k_1 + r_k)
  std::vector<double> top_of_object;
  std::vector<int> depth_rank;  // object indices sorted by ascending x_1
};

// Incremental pairwise-overlap index: balls small enough for the grid
// invariant go in a NeighborGrid; the few much-larger balls are checked
// directly. Positions are read from the Configuration passed to each call,
// which must be the one the index was built/moved against.
class OverlapIndex {
 public:
  OverlapIndex(const ModelSpec& spec, const Configuration& cfg);

  // True iff a ball of object k placed at `c` overlaps no other object
  // (tolerance as in balls_overlap).
  bool placement_ok(const Configuration& cfg, int k, std::span<const double> c,
                    double tol = 0.0) const;

  // Call after cfg.center(k) has been updated.
  void moved(const Configuration& cfg, int k);

  // Indices of objects possibly within distance (r_k + r_j) of `c`.
  void candidates(std::span<const double> c, int k, std::vector<int>& out) const;

 private:
  const ModelSpec* spec_;
  NeighborGrid grid_;
  std::vector<int> big_;        // objects checked without the grid
  std::vector<char> in_grid_;
  double max_grid_radius_ = 0.0;
  mutable std::vector<int> scratch_;
};

// Containment of every ball plus pairwise non-overlap, both with the given
// tolerance.
bool is_valid(const ModelSpec& spec, const Configuration& cfg, double tol = 0.0);

double weighted_cm(const ModelSpec& spec, const Configuration& cfg);

// Max over k of x^k_1 + r_k. `from` restricts to objects with index >= from
// (the bath surface excluding the first object uses from = 1).
double surface_height(const ModelSpec& spec, const Configuration& cfg,
                      int from = 0);

Observables compute_observables(const ModelSpec& spec, const Configuration& cfg);

// Pairs out of weight order: (j, k) with alpha_j > alpha_k (j pulled down
// harder) yet x^j_1 >= x^k_1 + delta (j sits at least delta above k).
std::vector<std::pair<int, int>> ordering_violations(const ModelSpec& spec,
                                                     const Configuration& cfg,
                                                     double delta);

// Exact planar decision: a displacement z with z_1 <= -delta that keeps
// object k inside the vessel and disjoint from all other objects, if one
// exists. Requires d = 2 and a HalfCylinder vessel. Candidate placements are
// floor points, pairwise intersections of inflated circles, circle/wall
// intersections, circle poles, and wall/floor corners.
std::optional<std::vector<double>> can_translate_down(const ModelSpec& spec,
                                                      const Configuration& cfg,
                                                      int k, double delta);

}  // namespace hardball

#endif  // HARDBALL_CONFIGURATION_HPP_
