#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "gocoexist/sim_engine.hpp"

namespace gocoexist {

inline constexpr const char* kTraceHeader =
    "slot,gamma,p_d_w,theta,d_tx_s,d_comp_s,d_tot_s,success,r_d_bps,z,mov_eff,mov_cost";

std::string trace_csv(const TraceLog& log);
std::string heatmap_csv(const HeatmapData& h);
std::string contours_csv(const HeatmapData& h);
std::string grid_csv(const GridResult& g);
std::string frontier_csv(const std::vector<FrontierRow>& rows);
std::string split_csv(const SplitResult& r);
std::string summary_csv(const std::vector<std::pair<std::string, double>>& metrics);
/// JSON echo of the resolved config plus figure name and synthetic-data notes.
std::string manifest_json(const ScenarioConfig& cfg);

void write_trace(const TraceLog& log, const std::filesystem::path& dir);
void write_heatmap(const HeatmapData& h, const std::filesystem::path& dir, const std::string& stem);
void write_manifest(const ScenarioConfig& cfg, const std::filesystem::path& dir);

/// Re-reads trace.csv. Derived running series are not stored in the file and
/// are left empty; moving series and z are restored exactly.
TraceLog read_trace(const std::filesystem::path& path);

/// Resolved config stored in a manifest.
ScenarioConfig read_manifest(const std::filesystem::path& path);

std::vector<std::pair<std::string, double>> summary_metrics(const RunSummary& s);

}  // namespace gocoexist
