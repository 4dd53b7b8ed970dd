#pragma once

#include "mlosim/config.hpp"
#include "mlosim/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mlosim {

struct Position {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const Position&, const Position&) = default;
};

double distance(Position a, Position b) noexcept;

enum class NodeKind : std::uint8_t { AP, STA };

struct Node {
    std::uint32_t id = 0;
    NodeKind kind = NodeKind::AP;
    Position position;
    double tx_power_dbm = 0.0;
    double noise_figure_db = 0.0;
    friend bool operator==(const Node&, const Node&) = default;
};

struct StationProfile {
    Node node;
    TrafficKind traffic_kind = TrafficKind::Data;
    double load_mbps = 0.0;
    /// Set only when the serving BSS is a legacy multi-band single-link BSS.
    std::optional<Band> assigned_band;
    /// Band drawn for this station in case its BSS is (or becomes) MB-SL. Drawn for every
    /// station so that the policy stream is independent of the MLO composition.
    Band legacy_band_draw = Band::Band24;
    friend bool operator==(const StationProfile&, const StationProfile&) = default;
};

struct Bss {
    BssId id = 0;
    Node ap;
    std::vector<StationProfile> stations;
    Capability capability = Capability::MLO;
    Policy policy = Policy::SLCI;
    friend bool operator==(const Bss&, const Bss&) = default;
};

/// A deployment: BSS 0 is the central BSS_A at the middle of the area.
struct Scenario {
    std::vector<Bss> bsses;
    double area_width_m = 0.0;
    double area_height_m = 0.0;
    std::uint64_t seed = 0;
    friend bool operator==(const Scenario&, const Scenario&) = default;

    std::size_t station_count() const noexcept;
};

/// Draws AP and station geometry plus traffic kinds and loads. Neighbor AP layouts
/// closer than `min_ap_distance_m` are discarded and redrawn whole; throws
/// GenerationError once `max_attempts` layouts have been rejected. Policies are
/// left at their defaults (every BSS MLO/SLCI) until assign_policies runs.
Scenario generate_scenario(const ScenarioParams& params, const RadioParams& radio, const TrafficParams& traffic,
                           std::uint64_t seed);

/// Central BSS gets `central_policy`; exactly round(mlo_fraction * (N - 1)) neighbors
/// are MLO (chosen uniformly), each running SLCI or MCAA with probability 1/2; the
/// rest are MB-SL with every station pinned to a uniformly drawn band.
Scenario assign_policies(Scenario scenario, Policy central_policy, double mlo_fraction, std::uint64_t seed);

/// Number of MLO neighbors realized for a given fraction.
int mlo_neighbor_count(std::size_t n_bss, double mlo_fraction) noexcept;

/// Checks every structural invariant; returns one message per violation.
std::vector<std::string> check_invariants(const Scenario& scenario, const ScenarioParams& params);

/// JSON document with nodes, positions and assignments.
std::string scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const std::string& text);

}  // namespace mlosim
