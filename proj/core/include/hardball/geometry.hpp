#ifndef HARDBALL_GEOMETRY_HPP_
#define HARDBALL_GEOMETRY_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <unordered_map>
#include <variant>
#include <vector>

namespace hardball {

// Vessel cross-section is |x_i| < half_width for i >= 2; axis coordinate
// x_1 > 0. In d = 2 this is the one-sided open strip of width 2*half_width.
struct HalfCylinder {
  double half_width = 1.0;
};

// Region above the graph of a lower-boundary function: x_1 > g(x_2,...,x_d).
// g is an arbitrary callable, evaluated pointwise inside the declared bound
// box for the lateral coordinates. Containment is tested by sampling
// boundary directions on the ball's lower hemisphere (exact tests are not
// possible for arbitrary g).
struct GraphDomain {
  std::function<double(std::span<const double>)> lower;
  std::vector<double> box_lo;  // lateral bound box, size d-1
  std::vector<double> box_hi;
  int boundary_samples = 64;
};

struct Vessel {
  int dim = 2;
  std::variant<HalfCylinder, GraphDomain> shape = HalfCylinder{};

  static Vessel half_cylinder(int dim, double half_width);
  static Vessel graph_domain(int dim, GraphDomain g);

  bool is_half_cylinder() const {
    return std::holds_alternative<HalfCylinder>(shape);
  }
  const HalfCylinder& half_cylinder_shape() const {
    return std::get<HalfCylinder>(shape);
  }
  const GraphDomain& graph_shape() const { return std::get<GraphDomain>(shape); }

  // True iff the closed ball of radius (radius - tol) around `center` lies in
  // the vessel. Exact for HalfCylinder; sampled for GraphDomain. tol < 0 is
  // rejected. Tangency with the boundary is accepted.
  bool contains_ball(std::span<const double> center, double radius,
                     double tol = 0.0) const;

  // (d-1)-dimensional measure of the cross-section {x in D : x_1 = b}.
  // Closed form for HalfCylinder, grid quadrature at `grid_res` for
  // GraphDomain.
  double cross_section_measure(double b, double grid_res = 1e-3) const;

  // Lateral placement bounds for enumeration/initialization. For GraphDomain
  // these are the declared bound box.
  void lateral_bounds(double margin, std::vector<double>& lo,
                      std::vector<double>& hi) const;

  // Smallest admissible x_1 for a ball of given radius at the given lateral
  // coordinates (exact for HalfCylinder, bisection for GraphDomain).
  double floor_height(std::span<const double> lateral, double radius) const;
};

struct Ball {
  std::vector<double> center;
  double radius = 0.0;
};

bool ball_inside_vessel(const Vessel& v, const Ball& b, double tol = 0.0);

// True iff |c1 - c2| < r1 + r2 - tol. Exact tangency is not an overlap.
bool balls_overlap(const Ball& b1, const Ball& b2, double tol = 0.0);

double distance(std::span<const double> a, std::span<const double> b);
double distance_sq(std::span<const double> a, std::span<const double> b);

// Uniform-grid spatial index over ball centers. Invariant: cell_size must be
// at least twice the largest radius among indexed balls, so that any
// overlapping pair of indexed balls lies in adjacent cells and query() over
// the 3^d neighborhood is a superset of the true overlap set.
class NeighborGrid {
 public:
  NeighborGrid(int dim, double cell_size);

  // Builds a grid over all balls with cell_size = 2 * max radius.
  static NeighborGrid build(const std::vector<Ball>& balls);

  int dim() const { return dim_; }
  double cell_size() const { return cell_; }
  std::size_t size() const { return cells_.size(); }
  std::size_t occupied_cells() const { return buckets_.size(); }

  void insert(int index, std::span<const double> center);
  void move(int index, std::span<const double> new_center);
  void remove(int index);
  bool contains(int index) const;

  // All indexed balls whose cell intersects the axis-aligned box
  // center +- range. Candidates are appended to `out` (cleared first).
  void query_range(std::span<const double> center, double range,
                   std::vector<int>& out) const;

  // Superset of indexed balls that could intersect `b`, assuming the grid
  // invariant holds for the indexed balls.
  std::vector<int> query(const Ball& b) const;

 private:
  struct CellKey {
    std::array<std::int32_t, 4> c{};
    bool operator==(const CellKey&) const = default;
  };
  struct CellHash {
    std::size_t operator()(const CellKey& k) const;
  };

  CellKey key_for(std::span<const double> center) const;

  int dim_;
  double cell_;
  std::unordered_map<CellKey, std::vector<int>, CellHash> buckets_;
  std::unordered_map<int, CellKey> cells_;
};

}  // namespace hardball

#endif  // HARDBALL_GEOMETRY_HPP_
