#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "acosim/sim.hpp"

namespace acosim {

// Write content to <dir>/<name> atomically (temp file + rename), so an
// interrupted run never leaves a truncated artifact.
void atomic_write(const std::filesystem::path& dir, const std::string& name,
                  const std::string& content);

std::string kpi_csv(const KpiReport& rep);
std::string map_csv(const AggregatedMap& agg);
std::string grid_csv(const KpiReport& rep);
std::string spectrum_csv(const SpatialSpectrum& spec);
std::string actions_jsonl(const std::vector<RoundLogEntry>& log);

// 8-bit PGM of the best-server RSRP field; gray = clamp((rsrp+140)/70)*255.
std::string heatmap_pgm(const KpiReport& rep);

struct RunManifest {
    std::string scenario_path;  // empty: built-in defaults
    std::string out_dir;
    int rounds{2};
    std::optional<std::uint64_t> seed_override;
    bool emit_heatmaps{false};
    bool emit_maps{false};
    bool emit_spectra{false};
    bool lenient{false};
};

// Full run: parse scenario, build the network, run the rounds, emit artifacts,
// print the per-round summary table. Returns a process exit status.
int run_manifest(const RunManifest& manifest, std::ostream& out, std::ostream& err);

}  // namespace acosim
