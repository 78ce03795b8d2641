#include "hardball/io.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

namespace hardball {

std::string format_double(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buf, p);
}

nlohmann::json config_to_json(const Configuration& cfg,
                              std::span<const double> radii) {
  nlohmann::json centers = nlohmann::json::array();
  for (int k = 0; k < cfg.size(); ++k) {
    nlohmann::json c = nlohmann::json::array();
    for (double v : cfg.center(k)) c.push_back(v);
    centers.push_back(std::move(c));
  }
  return {{"d", cfg.d},
          {"N", cfg.size()},
          {"radii", std::vector<double>(radii.begin(), radii.end())},
          {"centers", std::move(centers)}};
}

Configuration config_from_json(const nlohmann::json& j) {
  Configuration cfg;
  cfg.d = j.at("d").get<int>();
  if (cfg.d < 1) throw std::invalid_argument("bad dimension");
  for (const auto& c : j.at("centers")) {
    if (int(c.size()) != cfg.d)
      throw std::invalid_argument("center has wrong dimension");
    for (const auto& v : c) cfg.x.push_back(v.get<double>());
  }
  return cfg;
}

nlohmann::json spec_to_json(const ModelSpec& spec) {
  nlohmann::json v;
  if (spec.vessel.is_half_cylinder()) {
    v = {{"kind", "half_cylinder"},
         {"half_width", spec.vessel.half_cylinder_shape().half_width}};
  } else {
    v = {{"kind", "graph"}};
  }
  return {{"d", spec.d},        {"vessel", std::move(v)},
          {"radii", spec.radii}, {"alpha", spec.alpha},
          {"mass", spec.mass},   {"lambda", spec.lambda}};
}

namespace {

void append_number(std::string& out, double v) { out += format_double(v); }

}  // namespace

void write_snapshots_jsonl(const std::filesystem::path& path,
                           std::span<const Snapshot> snapshots,
                           SnapshotKind kind, bool include_centers) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  for (const Snapshot& s : snapshots) {
    line.clear();
    if (kind == SnapshotKind::kSweep) {
      line += "{\"sweep\":" + std::to_string(s.step);
    } else {
      line += "{\"t\":";
      append_number(line, s.t);
    }
    line += ",\"wcm\":";
    append_number(line, s.wcm);
    line += ",\"surface\":";
    append_number(line, s.surface);
    if (include_centers) {
      line += ",\"centers\":[";
      for (int k = 0; k < s.cfg.size(); ++k) {
        if (k) line += ',';
        line += '[';
        auto c = s.cfg.center(k);
        for (int i = 0; i < s.cfg.d; ++i) {
          if (i) line += ',';
          append_number(line, c[i]);
        }
        line += ']';
      }
      line += ']';
    }
    line += "}\n";
    f << line;
  }
}

std::vector<Snapshot> read_snapshots_jsonl(const std::filesystem::path& path,
                                           int d) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string());
  std::vector<Snapshot> out;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line);
    Snapshot s;
    if (j.contains("sweep")) {
      s.step = j["sweep"].get<long>();
      s.t = double(s.step);
    } else {
      s.t = j.at("t").get<double>();
    }
    s.wcm = j.at("wcm").get<double>();
    s.surface = j.at("surface").get<double>();
    if (j.contains("centers")) {
      s.cfg.d = d;
      for (const auto& c : j["centers"])
        for (const auto& v : c) s.cfg.x.push_back(v.get<double>());
    }
    out.push_back(std::move(s));
  }
  return out;
}

void write_summary_csv(
    const std::filesystem::path& path,
    const std::vector<std::pair<std::string, std::string>>& rows,
    const std::string& schema) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string());
  f << "schema," << schema << "\n";
  for (const auto& [k, v] : rows) f << k << "," << v << "\n";
}

void write_path_csv(const std::filesystem::path& path,
                    std::span<const Configuration> keyframes) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string());
  if (keyframes.empty()) return;
  const int d = keyframes.front().d;
  f << "frame,object";
  for (int i = 0; i < d; ++i) f << ",x" << (i + 1);
  f << "\n";
  for (std::size_t fi = 0; fi < keyframes.size(); ++fi) {
    for (int k = 0; k < keyframes[fi].size(); ++k) {
      f << fi << "," << k;
      for (double v : keyframes[fi].center(k)) f << "," << format_double(v);
      f << "\n";
    }
  }
}

void write_json_file(const std::filesystem::path& path,
                     const nlohmann::json& j) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string());
  f << j.dump(2) << "\n";
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string());
  return nlohmann::json::parse(f);
}

}  // namespace hardball
