#include "hardball/runconfig.hpp"

#include <set>
#include <stdexcept>

namespace hardball {

ModelSpec RunConfig::to_model() const {
  ModelSpec spec;
  spec.d = d;
  if (vessel == "half_cylinder") {
    spec.vessel = Vessel::half_cylinder(d, half_width);
  } else {
    throw std::invalid_argument("unknown vessel kind: " + vessel);
  }
  if (!radii.empty())
    spec.radii = radii;
  else
    spec.radii.assign(std::size_t(n), radius);
  const std::size_t nn = spec.radii.size();
  spec.alpha = alpha.empty() ? std::vector<double>(nn, 1.0) : alpha;
  spec.mass = mass.empty() ? std::vector<double>(nn, 1.0) : mass;
  spec.lambda = lambda;
  spec.validate();
  return spec;
}

RunConfig runconfig_from_json(const nlohmann::json& j) {
  static const std::set<std::string> known = {
      "d",      "vessel",  "half_width", "n",     "radius",  "radii",
      "alpha",  "mass",    "lambda",     "sweeps", "burn_in", "thin",
      "steps",  "dt",      "inertia",    "seed",   "write_centers",
      "replicas", "jobs",  "out_dir"};
  if (!j.is_object()) throw std::invalid_argument("config must be an object");
  for (const auto& [key, _] : j.items())
    if (!known.count(key))
      throw std::invalid_argument("unknown config key: " + key);

  RunConfig c;
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
  };
  get("d", c.d);
  get("vessel", c.vessel);
  get("half_width", c.half_width);
  get("n", c.n);
  get("radius", c.radius);
  get("radii", c.radii);
  get("alpha", c.alpha);
  get("mass", c.mass);
  get("lambda", c.lambda);
  get("sweeps", c.sweeps);
  get("burn_in", c.burn_in);
  get("thin", c.thin);
  get("steps", c.steps);
  get("dt", c.dt);
  get("inertia", c.inertia);
  get("seed", c.seed);
  get("write_centers", c.write_centers);
  get("replicas", c.replicas);
  get("jobs", c.jobs);
  get("out_dir", c.out_dir);
  if (c.replicas < 1 || c.jobs < 1)
    throw std::invalid_argument("replicas and jobs must be >= 1");
  return c;
}

nlohmann::json runconfig_to_json(const RunConfig& c) {
  return {{"d", c.d},
          {"vessel", c.vessel},
          {"half_width", c.half_width},
          {"n", c.n},
          {"radius", c.radius},
          {"radii", c.radii},
          {"alpha", c.alpha},
          {"mass", c.mass},
          {"lambda", c.lambda},
          {"sweeps", c.sweeps},
          {"burn_in", c.burn_in},
          {"thin", c.thin},
          {"steps", c.steps},
          {"dt", c.dt},
          {"inertia", c.inertia},
          {"seed", c.seed},
          {"write_centers", c.write_centers},
          {"replicas", c.replicas},
          {"jobs", c.jobs},
          {"out_dir", c.out_dir}};
}

}  // namespace hardball
