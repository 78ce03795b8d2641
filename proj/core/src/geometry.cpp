#include "hardball/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hardball {

Vessel Vessel::half_cylinder(int dim, double half_width) {
  if (dim < 2) throw std::invalid_argument("vessel dimension must be >= 2");
  if (half_width <= 0) throw std::invalid_argument("half_width must be > 0");
  Vessel v;
  v.dim = dim;
  v.shape = HalfCylinder{half_width};
  return v;
}

Vessel Vessel::graph_domain(int dim, GraphDomain g) {
  if (dim < 2) throw std::invalid_argument("vessel dimension must be >= 2");
  if (dim > 3) throw std::invalid_argument("graph domains supported for d <= 3");
  if (g.box_lo.size() != std::size_t(dim - 1) ||
      g.box_hi.size() != std::size_t(dim - 1))
    throw std::invalid_argument("graph domain bound box must have d-1 entries");
  if (!g.lower) throw std::invalid_argument("graph domain needs a boundary function");
  if (g.boundary_samples < 1)
    throw std::invalid_argument("boundary_samples must be >= 1");
  Vessel v;
  v.dim = dim;
  v.shape = std::move(g);
  return v;
}

namespace {

// Boundary probe directions on the lower hemisphere (first coordinate < 0),
// plus the lowest point which is appended by the caller.
void lower_hemisphere_dirs(int dim, int m, std::vector<std::vector<double>>& out) {
  out.clear();
  if (dim == 2) {
    for (int k = 0; k < m; ++k) {
      const double phi = -std::numbers::pi / 2 +
                         (k + 0.5) * std::numbers::pi / m;
      out.push_back({-std::cos(phi), std::sin(phi)});
    }
  } else {
    // Fibonacci spiral on the hemisphere.
    const double ga = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < m; ++k) {
      const double z = -(k + 0.5) / m;  // first coordinate in (-1, 0)
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double th = ga * k;
      out.push_back({z, r * std::cos(th), r * std::sin(th)});
    }
  }
}

}  // namespace

bool Vessel::contains_ball(std::span<const double> center, double radius,
                           double tol) const {
  if (tol < 0) throw std::invalid_argument("tol must be >= 0");
  if (center.size() != std::size_t(dim))
    throw std::invalid_argument("center dimension mismatch");
  const double r = radius - tol;
  if (const auto* hc = std::get_if<HalfCylinder>(&shape)) {
    if (center[0] < r) return false;
    for (int i = 1; i < dim; ++i)
      if (std::abs(center[i]) > hc->half_width - r) return false;
    return true;
  }
  const auto& gd = std::get<GraphDomain>(shape);
  std::vector<std::vector<double>> dirs;
  lower_hemisphere_dirs(dim, gd.boundary_samples, dirs);
  std::vector<double> dir_low(dim, 0.0);
  dir_low[0] = -1.0;
  dirs.push_back(dir_low);
  std::vector<double> lat(dim - 1);
  for (const auto& dir : dirs) {
    for (int i = 1; i < dim; ++i) {
      lat[i - 1] = center[i] + r * dir[i];
      if (lat[i - 1] < gd.box_lo[i - 1] || lat[i - 1] > gd.box_hi[i - 1])
        return false;
    }
    const double x1 = center[0] + r * dir[0];
    if (x1 < gd.lower(lat)) return false;
  }
  return true;
}

double Vessel::cross_section_measure(double b, double grid_res) const {
  if (grid_res <= 0) throw std::invalid_argument("grid_res must be > 0");
  if (const auto* hc = std::get_if<HalfCylinder>(&shape)) {
    if (b <= 0) return 0.0;
    double m = 1.0;
    for (int i = 1; i < dim; ++i) m *= 2.0 * hc->half_width;
    return m;
  }
  const auto& gd = std::get<GraphDomain>(shape);
  std::vector<double> lat(dim - 1);
  if (dim == 2) {
    double m = 0.0;
    for (double y = gd.box_lo[0] + grid_res / 2; y < gd.box_hi[0];
         y += grid_res) {
      lat[0] = y;
      if (gd.lower(lat) < b) m += grid_res;
    }
    return m;
  }
  double m = 0.0;
  for (double y = gd.box_lo[0] + grid_res / 2; y < gd.box_hi[0]; y += grid_res)
    for (double z = gd.box_lo[1] + grid_res / 2; z < gd.box_hi[1];
         z += grid_res) {
      lat[0] = y;
      lat[1] = z;
      if (gd.lower(lat) < b) m += grid_res * grid_res;
    }
  return m;
}

void Vessel::lateral_bounds(double margin, std::vector<double>& lo,
                            std::vector<double>& hi) const {
  lo.assign(dim - 1, 0.0);
  hi.assign(dim - 1, 0.0);
  if (const auto* hc = std::get_if<HalfCylinder>(&shape)) {
    for (int i = 0; i < dim - 1; ++i) {
      lo[i] = -(hc->half_width - margin);
      hi[i] = hc->half_width - margin;
    }
    return;
  }
  const auto& gd = std::get<GraphDomain>(shape);
  for (int i = 0; i < dim - 1; ++i) {
    lo[i] = gd.box_lo[i] + margin;
    hi[i] = gd.box_hi[i] - margin;
  }
}

double Vessel::floor_height(std::span<const double> lateral,
                            double radius) const {
  if (std::holds_alternative<HalfCylinder>(shape)) return radius;
  const auto& gd = std::get<GraphDomain>(shape);
  std::vector<double> c(dim);
  for (int i = 1; i < dim; ++i) c[i] = lateral[i - 1];
  auto ok = [&](double x1) {
    c[0] = x1;
    return contains_ball(c, radius, 0.0);
  };
  double lo = gd.lower(lateral) + radius;
  if (ok(lo)) return lo;
  double step = radius;
  double hi = lo + step;
  int guard = 0;
  while (!ok(hi)) {
    lo = hi;
    step *= 2;
    hi = lo + step;
    if (++guard > 64)
      throw std::runtime_error("floor_height: no admissible height found");
  }
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

bool ball_inside_vessel(const Vessel& v, const Ball& b, double tol) {
  if (b.radius <= 0) throw std::invalid_argument("ball radius must be > 0");
  return v.contains_ball(b.center, b.radius, tol);
}

double distance_sq(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(distance_sq(a, b));
}

bool balls_overlap(const Ball& b1, const Ball& b2, double tol) {
  if (b1.center.size() != b2.center.size())
    throw std::invalid_argument("ball dimension mismatch");
  const double rsum = b1.radius + b2.radius - tol;
  if (rsum <= 0) return false;
  return distance_sq(b1.center, b2.center) < rsum * rsum;
}

std::size_t NeighborGrid::CellHash::operator()(const CellKey& k) const {
  std::uint64_t h = 0x9e3779b97f4a7c15ull;
  for (int i = 0; i < 4; ++i) {
    h ^= std::uint64_t(std::uint32_t(k.c[i])) + 0x9e3779b97f4a7c15ull +
         (h << 6) + (h >> 2);
  }
  return std::size_t(h);
}

NeighborGrid::NeighborGrid(int dim, double cell_size)
    : dim_(dim), cell_(cell_size) {
  if (dim < 1 || dim > 4) throw std::invalid_argument("grid dimension in [1,4]");
  if (cell_size <= 0) throw std::invalid_argument("cell_size must be > 0");
}

NeighborGrid NeighborGrid::build(const std::vector<Ball>& balls) {
  if (balls.empty()) throw std::invalid_argument("grid_build: empty ball list");
  double rmax = 0.0;
  for (const auto& b : balls) rmax = std::max(rmax, b.radius);
  NeighborGrid g(int(balls[0].center.size()), 2.0 * rmax);
  for (std::size_t i = 0; i < balls.size(); ++i)
    g.insert(int(i), balls[i].center);
  return g;
}

NeighborGrid::CellKey NeighborGrid::key_for(
    std::span<const double> center) const {
  CellKey k;
  for (int i = 0; i < dim_; ++i)
    k.c[i] = std::int32_t(std::floor(center[i] / cell_));
  return k;
}

void NeighborGrid::insert(int index, std::span<const double> center) {
  if (cells_.count(index)) throw std::invalid_argument("index already present");
  const CellKey k = key_for(center);
  buckets_[k].push_back(index);
  cells_[index] = k;
}

void NeighborGrid::move(int index, std::span<const double> new_center) {
  auto it = cells_.find(index);
  if (it == cells_.end()) throw std::out_of_range("stale grid index");
  const CellKey nk = key_for(new_center);
  if (nk == it->second) return;
  auto& old_bucket = buckets_[it->second];
  old_bucket.erase(std::find(old_bucket.begin(), old_bucket.end(), index));
  if (old_bucket.empty()) buckets_.erase(it->second);
  buckets_[nk].push_back(index);
  it->second = nk;
}

void NeighborGrid::remove(int index) {
  auto it = cells_.find(index);
  if (it == cells_.end()) throw std::out_of_range("stale grid index");
  auto& bucket = buckets_[it->second];
  bucket.erase(std::find(bucket.begin(), bucket.end(), index));
  if (bucket.empty()) buckets_.erase(it->second);
  cells_.erase(it);
}

bool NeighborGrid::contains(int index) const { return cells_.count(index) > 0; }

void NeighborGrid::query_range(std::span<const double> center, double range,
                               std::vector<int>& out) const {
  out.clear();
  std::array<std::int32_t, 4> lo{}, hi{}, cur{};
  for (int i = 0; i < dim_; ++i) {
    lo[i] = std::int32_t(std::floor((center[i] - range) / cell_));
    hi[i] = std::int32_t(std::floor((center[i] + range) / cell_));
    cur[i] = lo[i];
  }
  for (;;) {
    CellKey k;
    for (int i = 0; i < dim_; ++i) k.c[i] = cur[i];
    if (auto it = buckets_.find(k); it != buckets_.end())
      out.insert(out.end(), it->second.begin(), it->second.end());
    int axis = 0;
    while (axis < dim_) {
      if (++cur[axis] <= hi[axis]) break;
      cur[axis] = lo[axis];
      ++axis;
    }
    if (axis == dim_) break;
  }
}

std::vector<int> NeighborGrid::query(const Ball& b) const {
  std::vector<int> out;
  // Any indexed ball overlapping b has its center within b.radius + cell/2.
  query_range(b.center, b.radius + cell_ / 2, out);
  return out;
}

}  // namespace hardball
