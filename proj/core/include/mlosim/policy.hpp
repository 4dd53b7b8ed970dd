#pragma once

#include "mlosim/types.hpp"

#include <functional>
#include <map>
#include <span>
#include <vector>

namespace mlosim {

/// What the traffic manager sees when placing one flow.
struct PolicyInput {
    FlowId flow = 0;
    /// Enabled interfaces of the destination station; nonempty.
    BandSet enabled;
    /// Free airtime per band as observed by the AP, each in [0, 1].
    PerBand<double> rho{};
    double arrival_time = 0.0;
};

/// Whole flow on the enabled band with the most free airtime; ties go to the
/// lowest carrier frequency.
Weights slci(const PolicyInput& input);

/// Free airtime at or below this counts as saturated.
inline constexpr double kSaturationTolerance = 1e-12;

/// Split proportional to free airtime over the enabled bands, uniform when
/// every enabled band is saturated.
Weights mcaa(const PolicyInput& input);

/// Whole flow on the station's assigned band. Throws InvalidScenarioError if that band is disabled.
Weights legacy_assign(const PolicyInput& input, Band assigned_band);

/// Per-flow view used by the dynamic rebalancer.
struct McabFlow {
    FlowId id = 0;
    BandSet enabled;
    double arrival_time = 0.0;
    double load_mbps = 0.0;
    /// Channel seconds per megabit on each band's link (0 where disabled).
    PerBand<double> airtime_per_mbit{};
};

using WeightAssignment = std::map<FlowId, Weights>;

/// Free airtime per band at the AP, with all of that AP's own flows excluded.
using RhoProvider = std::function<double(Band)>;

/// Rebalancing order: fewest enabled interfaces first, then earliest arrival, then id.
std::vector<McabFlow> mcab_order(std::span<const McabFlow> flows);

/// Re-places every active flow of one AP. Flows are taken in mcab_order; each gets
/// the MCAA split against the room left after the flows placed before it, whose
/// demanded airtime is charged against each band (clipped at what is left).
WeightAssignment mcab_reallocate(std::span<const McabFlow> flows, const RhoProvider& rho_provider);

bool is_valid_weights(const Weights& w, BandSet enabled, double tol = 1e-12) noexcept;

}  // namespace mlosim
