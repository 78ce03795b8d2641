#ifndef HARDBALL_EXPERIMENTS_HPP_
#define HARDBALL_EXPERIMENTS_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hardball/diagnostics.hpp"
#include "hardball/sampler.hpp"

namespace hardball {

// ---- vessel admissibility ----

// The model is well posed when the cross-section measure m(b) satisfies
// m(b) exp(-2ab) -> 0, where a is the smallest drift rate. The check
// tabulates the product on a grid up to b_max and requires the tail to be
// non-increasing and below 1e-8 at b_max.
struct VesselCheckRow {
  double b = 0.0;
  double measure = 0.0;  // |D_b|
  double product = 0.0;  // |D_b| exp(-2 a b)
};

struct VesselCheckResult {
  bool condition_holds = false;
  bool b0_found = false;          // some section was empty
  bool window_too_small = false;  // decaying but not yet below tolerance
  std::vector<VesselCheckRow> table;
  std::string message;
};

VesselCheckResult check_vessel(
    const std::function<double(double)>& section_measure, double a,
    double b_max = 2000.0, int grid_points = 64);

VesselCheckResult check_vessel(const Vessel& vessel, double a,
                               double b_max = 2000.0, int grid_points = 64);

// ---- concentration of the stationary law as the drift scale grows ----

struct ConcentrationRow {
  double lambda = 0.0;
  double p = 0.0;  // P(2 x . v_1 > c0 - eps), v_1 the unit-scale drift
  double ess = 0.0;
  WilsonInterval ci;
};

struct ConcentrationResult {
  double c0 = 0.0;  // sup over configurations of 2 x . v_1 = -2 c1
  std::vector<ConcentrationRow> rows;
  bool monotone = false;  // p non-decreasing along the lambda list
};

// base.lambda is ignored; each row reruns the chain at the listed scale.
ConcentrationResult concentration_experiment(const ModelSpec& base,
                                             std::span<const double> lambdas,
                                             double eps, long sweeps,
                                             long burn_in, long thin,
                                             std::uint64_t seed);

// With inertia, the stationary law equals the zero-inertia law with weights
// alpha_k * m_k^2 (normal reflection of the mass-scaled coordinates). This
// returns that equivalent spec (masses reset to 1) for exact sampling.
ModelSpec inertia_equivalent(const ModelSpec& spec);

// ---- liquid settling (surface formation) ----

struct SurfaceParams {
  int n = 50;
  double rho = 0.08;
  double half_width = 1.0;
  double delta = 0.3;                  // settledness slack
  std::vector<double> lambdas{1, 10, 50, 200};
  long sweeps = 20000;
  long burn_in = 5000;
  long thin = 20;
  std::uint64_t seed = 1;
  int c1_restarts = 4;
};

struct SurfaceRow {
  double lambda = 0.0;
  double p_settled = 0.0;  // P(weighted cm < c1 + delta)
  double p_no_drop = 0.0;  // P(no object can translate down by delta)
  double ess = 0.0;
  WilsonInterval settled_ci, no_drop_ci;
};

struct SurfaceResult {
  double c1 = 0.0;  // packing upper bound on inf of the weighted cm
  std::vector<SurfaceRow> rows;
};

SurfaceResult surface_experiment(const SurfaceParams& p);

// ---- sorting by weight (heavier objects sink) ----

struct CentrifugeParams {
  int n = 20;  // split evenly between the two weights; radii all equal
  double rho = 0.1;
  double half_width = 1.0;
  double alpha_light = 1.0;
  double alpha_heavy = 2.0;
  double delta = 0.2;
  std::vector<double> lambdas{200.0};
  long sweeps = 20000;
  long burn_in = 5000;
  long thin = 20;
  std::uint64_t seed = 1;
};

struct CentrifugeRow {
  double lambda = 0.0;
  double violation_freq = 0.0;  // fraction of snapshots with any inversion
  double ess = 0.0;
  WilsonInterval ci;
};

struct CentrifugeResult {
  std::vector<CentrifugeRow> rows;
};

CentrifugeResult centrifuge_experiment(const CentrifugeParams& p);

// ---- buoyancy of one large object in a bath of small ones ----

enum class ArchimedesMode { kFloat, kSink };

struct ArchimedesParams {
  double rho = 0.06;  // small-object radius, must be < 1/2
  int n_small = 200;
  double half_width = 1.0;    // large object is B(., 1/2)
  double gamma_ratio = 0.5;   // weight ratio alpha_1/alpha_k relative to the
                              // critical value pi/(4 sqrt(12) rho^2 m1)
  double lambda = 1.0;
  double delta = 0.05;        // event slack
  double m1 = 1.0;            // mass of the large object
  ArchimedesMode mode = ArchimedesMode::kFloat;
  long sweeps = 200000;
  long burn_in = 50000;
  long thin = 100;
  std::uint64_t seed = 1;
};

struct ArchimedesResult {
  double critical_gamma = 0.0;  // pi / (4 sqrt(12) rho^2), divided by m1
  double precondition = 0.0;    // rho^2 N sqrt(12), must exceed 2 - pi/4
  double p_float = 0.0;  // top of large object within delta of the bath surface
  double p_sink = 0.0;   // large object within delta of the floor
  double p_mode = 0.0;   // the probability selected by `mode`
  double ess = 0.0;
  WilsonInterval float_ci, sink_ci;
};

// Critical weight above which the large object sinks: pi / (4 sqrt(12) rho^2).
double archimedes_critical_gamma(double rho);

ArchimedesResult archimedes_experiment(const ArchimedesParams& p);

// ---- explicit paths between configurations ----

struct PathResult {
  std::vector<Configuration> keyframes;  // piecewise-linear path, from -> to
  bool certified = false;
  long segments = 0;
  long samples_checked = 0;
};

// Piecewise-linear collision-free path between two valid configurations in a
// planar HalfCylinder: objects are lifted one at a time (highest first) into
// index-keyed parking slots above both configurations, giving a canonical
// middle state; the second half is the reversed extraction of `to`. Requires
// (half_width - r_j) >= r_i + r_j for all pairs so the center lane clears the
// parked objects. The path is certified by checking `samples_per_segment`
// interpolated states per segment.
PathResult connectivity_path(const ModelSpec& spec, const Configuration& from,
                             const Configuration& to,
                             long samples_per_segment = 1000);

}  // namespace hardball

#endif  // HARDBALL_EXPERIMENTS_HPP_
