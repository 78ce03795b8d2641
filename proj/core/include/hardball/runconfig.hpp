#ifndef HARDBALL_RUNCONFIG_HPP_
#define HARDBALL_RUNCONFIG_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "hardball/configuration.hpp"

namespace hardball {

// Flat run description shared by the command-line tools. A JSON file fills
// any subset of the fields; unknown keys are rejected so typos fail loudly.
struct RunConfig {
  // model
  int d = 2;
  std::string vessel = "half_cylinder";
  double half_width = 1.0;
  int n = 10;
  double radius = 0.1;
  std::vector<double> radii;  // per-object override of n/radius
  std::vector<double> alpha;  // broadcast to 1.0 when empty
  std::vector<double> mass;   // broadcast to 1.0 when empty
  double lambda = 1.0;

  // run
  long sweeps = 10000;
  long burn_in = 1000;
  long thin = 10;
  long steps = 100000;  // dynamics steps
  double dt = 0.0;      // 0 selects the default step
  bool inertia = false;
  std::uint64_t seed = 1;
  bool write_centers = true;
  int replicas = 1;  // independent chains, seeds seed..seed+replicas-1
  int jobs = 1;      // worker threads for the replica fan-out
  std::string out_dir;  // empty selects a timestamp+seed name

  ModelSpec to_model() const;
};

RunConfig runconfig_from_json(const nlohmann::json& j);

// Full echo, defaults applied; written next to the outputs of every run.
nlohmann::json runconfig_to_json(const RunConfig& c);

}  // namespace hardball

#endif  // HARDBALL_RUNCONFIG_HPP_
