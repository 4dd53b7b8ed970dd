#pragma once

#include "mlosim/config.hpp"
#include "mlosim/engine.hpp"
#include "mlosim/experiment.hpp"

#include <cstdint>
#include <filesystem>
#include <string>

namespace mlosim {

/// First line of every CSV: `# mlosim <version> config_hash=<hex> seed=<n>`.
std::string provenance_line(const RunConfig& config, std::uint64_t seed);

/// flows.csv: flow_id,bss,sta,kind,load_mbps,t_start,t_end,required_airtime,allocated_airtime,satisfaction,w_2g4,w_5g,w_6g
std::string flows_csv(const RunConfig& config, const SimResult& result);

/// congestion.csv: ap,band,time,occupancy (optionally resampled on a fixed grid).
std::string congestion_csv(const RunConfig& config, const SimResult& result);

std::string result_json(const RunConfig& config, const SingleRun& run);

/// Writes flows.csv, congestion.csv, result.json, scenario.json and schedule.csv.
void write_run_outputs(const std::filesystem::path& dir, const RunConfig& config, std::uint64_t seed,
                       const SingleRun& run);

/// summary.csv, cdf.csv and percentiles.csv for experiment A.
void write_experiment_a(const std::filesystem::path& dir, const RunConfig& config, std::uint64_t base_seed,
                        const ExperimentAResult& result);

/// summary.csv, cdf.csv, percentiles.csv and sweep.csv for experiment B.
void write_experiment_b(const std::filesystem::path& dir, const RunConfig& config, std::uint64_t base_seed,
                        const ExperimentBResult& result);

/// Parses a congestion.csv body back into per-(ap, band) series (provenance comment skipped).
std::vector<PerBand<std::vector<OccupancySample>>> parse_congestion_csv(const std::string& text);

}  // namespace mlosim
