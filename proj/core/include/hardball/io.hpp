#ifndef HARDBALL_IO_HPP_
#define HARDBALL_IO_HPP_

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hardball/sampler.hpp"

namespace hardball {

// Shortest round-trip decimal form; used everywhere numbers are written so
// that repeated runs produce byte-identical files.
std::string format_double(double v);

// Interchange format {d, N, radii, centers}; radii may be empty when the
// caller has no spec at hand.
nlohmann::json config_to_json(const Configuration& cfg,
                              std::span<const double> radii = {});
Configuration config_from_json(const nlohmann::json& j);

nlohmann::json spec_to_json(const ModelSpec& spec);

// Chain snapshots are indexed by sweep, trajectories by physical time.
enum class SnapshotKind { kSweep, kTime };

// One JSON object per line: {"sweep"|"t","wcm","surface","centers"}.
void write_snapshots_jsonl(const std::filesystem::path& path,
                           std::span<const Snapshot> snapshots,
                           SnapshotKind kind,
                           bool include_centers = true);

std::vector<Snapshot> read_snapshots_jsonl(const std::filesystem::path& path,
                                           int d);

// Two-column key,value file; the first row pins the schema version.
void write_summary_csv(
    const std::filesystem::path& path,
    const std::vector<std::pair<std::string, std::string>>& rows,
    const std::string& schema = "hardball-summary-1");

// frame,object,x1,x2,... rows for a piecewise-linear path.
void write_path_csv(const std::filesystem::path& path,
                    std::span<const Configuration> keyframes);

void write_json_file(const std::filesystem::path& path,
                     const nlohmann::json& j);

nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace hardball

#endif  // HARDBALL_IO_HPP_
