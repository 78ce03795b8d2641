#ifndef HARDBALL_PACKING_HPP_
#define HARDBALL_PACKING_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "hardball/configuration.hpp"

namespace hardball {

// Hexagonal lattice of discs of radius rho generated by the translations
// (2*rho, 0) and (rho, rho*sqrt(3)), with one disc centered at `anchor`;
// rows of touching discs run parallel to the first axis.
struct HoneycombSpec {
  double rho = 0.0;
  std::array<double, 2> anchor{0.0, 0.0};
};

// All lattice discs fully inside the vessel, in increasing (x_1, x_2) order,
// truncated at count_limit. d = 2 only.
std::vector<std::array<double, 2>> honeycomb_in_region(const HoneycombSpec& h,
                                                       const Vessel& vessel,
                                                       long count_limit);

// The n centers with smallest x_1; ties by x_2, then input order. Throws if
// n exceeds the input size.
std::vector<std::array<double, 2>> lowest_n(
    std::span<const std::array<double, 2>> centers, std::size_t n);

// Deterministic local compaction: each object is dropped straight down
// (along -x_1, lateral coordinates fixed) to its lowest admissible height,
// in increasing-x_1 order, with full passes repeated until no object moves
// more than 1e-9.
Configuration compact_down(const ModelSpec& spec, Configuration cfg);

struct C1Result {
  double value = 0.0;     // upper bound on inf over D of the weighted cm
  Configuration argmin;   // valid configuration achieving `value`
};

// Best-of-restarts annealed minimum of the weighted center of mass, each
// restart followed by compact_down. Returns an upper bound on c_1.
C1Result c1_estimate(const ModelSpec& spec, int restarts,
                     std::span<const double> lambda_schedule,
                     long sweeps_per_stage = 2000, std::uint64_t seed = 1);

}  // namespace hardball

#endif  // HARDBALL_PACKING_HPP_
