#pragma once

#include "mlosim/types.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mlosim {

inline constexpr std::string_view kToolVersion = "0.1.0";

struct Range {
    double lo = 0.0;
    double hi = 0.0;
    friend bool operator==(const Range&, const Range&) = default;
};

struct IntRange {
    int lo = 0;
    int hi = 0;
    friend bool operator==(const IntRange&, const IntRange&) = default;
};

struct BandParams {
    double carrier_ghz = 0.0;
    double bandwidth_mhz = 0.0;
    friend bool operator==(const BandParams&, const BandParams&) = default;
};

inline constexpr std::size_t kNumMcs = 12;

struct RadioParams {
    PerBand<BandParams> bands{{{2.437, 20.0}, {5.230, 40.0}, {6.295, 80.0}}};
    double ap_tx_dbm = 20.0;
    double sta_tx_dbm = 15.0;
    double tx_gain_db = 0.0;
    double rx_gain_db = 0.0;
    double cca_dbm = -82.0;
    double noise_figure_db = 7.0;
    int spatial_streams = 2;
    /// OFDM symbol duration including a 0.8 us guard interval.
    double symbol_us = 13.6;
    /// Minimum SNR (dB) for MCS 0..11.
    std::array<double, kNumMcs> mcs_thresholds_db{2, 5, 8, 11, 15, 19, 21, 23, 27, 29, 31, 33};
    friend bool operator==(const RadioParams&, const RadioParams&) = default;
};

/// Dual-slope log-distance path loss:
///   PL = ref_loss + 20 log10(f / ref_freq) + near_slope log10(min(d, bp)) + [d > bp] far_slope log10(d / bp)
struct PathLossParams {
    double ref_loss_db = 40.05;
    double ref_freq_ghz = 2.4;
    double near_slope_db = 20.0;
    double breakpoint_m = 5.0;
    double far_slope_db = 35.0;
    friend bool operator==(const PathLossParams&, const PathLossParams&) = default;
};

/// MAC abstraction. When `efficiency` is empty the per-link efficiency is derived
/// from the airtime of one MPDU exchange (DIFS + mean backoff + preamble + data +
/// SIFS + ACK); otherwise the fixed value is used for every link.
struct MacParams {
    double mpdu_bytes = 1500.0;
    std::optional<double> efficiency;
    double per = 0.10;
    double mac_overhead_bytes = 30.0;
    double slot_us = 9.0;
    double sifs_us = 16.0;
    int cw_min = 15;
    double preamble_us = 52.0;
    double ack_us = 28.0;
    friend bool operator==(const MacParams&, const MacParams&) = default;
};

struct TrafficParams {
    double t_on_s = 3.0;
    double t_off_s = 1.0;
    bool start_on = false;
    Range video_load_mbps{20.0, 25.0};
    Range data_load_mbps{1.0, 3.0};
    friend bool operator==(const TrafficParams&, const TrafficParams&) = default;
};

struct ScenarioParams {
    int n_bss = 5;
    double area_width_m = 20.0;
    double area_height_m = 20.0;
    double min_ap_distance_m = 3.0;
    Range station_distance_m{1.0, 5.0};
    IntRange neighbor_stations{5, 15};
    int central_video_stations = 1;
    int central_data_stations = 0;
    int max_attempts = 10000;
    friend bool operator==(const ScenarioParams&, const ScenarioParams&) = default;
};

struct PolicyParams {
    Policy central = Policy::MCAB;
    double mlo_fraction = 1.0;
    double mcab_delta_s = 1.0;
    bool random_tick_phase = false;
    friend bool operator==(const PolicyParams&, const PolicyParams&) = default;
};

struct SimParams {
    double horizon_s = 120.0;
    bool record_congestion = true;
    /// Optional fixed-rate resampling of the congestion series in exports (0 = off).
    double congestion_resample_s = 0.0;
    friend bool operator==(const SimParams&, const SimParams&) = default;
};

enum class QuantileRule : std::uint8_t {
    /// sorted[floor(p * n)], the smallest sample whose CDF strictly exceeds p.
    NearestRankUpper,
    /// sorted[ceil(p * n) - 1], the classic nearest-rank definition.
    NearestRankLower,
};

struct MetricsParams {
    QuantileRule quantile = QuantileRule::NearestRankUpper;
    double satisfaction_threshold = 0.95;
    friend bool operator==(const MetricsParams&, const MetricsParams&) = default;
};

struct ExperimentParams {
    int ns_a = 500;
    int ns_b = 200;
    int n_bss_b = 11;
    std::uint64_t base_seed = 1;
    std::vector<double> fractions{0.0, 0.3, 0.7, 1.0};
    int workers = 1;
    friend bool operator==(const ExperimentParams&, const ExperimentParams&) = default;
};

struct RunConfig {
    RadioParams radio;
    PathLossParams path_loss;
    MacParams mac;
    TrafficParams traffic;
    ScenarioParams scenario;
    PolicyParams policy;
    SimParams sim;
    MetricsParams metrics;
    ExperimentParams experiment;
    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses the flat `dotted.key = value` format on top of the defaults. Lines may
/// carry `#` comments. Every bad line is reported (line number and key) in one
/// ConfigError.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Semantic checks (ranges, orderings). Returns one message per violation.
std::vector<std::string> validate(const RunConfig& config);

/// Canonical text form: every key, in fixed order, one per line.
std::string to_text(const RunConfig& config);

/// (key, value) pairs whose value differs from the defaults.
std::vector<std::pair<std::string, std::string>> overrides(const RunConfig& config);

/// 64-bit FNV-1a over the canonical text form, hex encoded.
std::string config_hash(const RunConfig& config);

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL) noexcept;

std::string format_double(double v);

}  // namespace mlosim
