#pragma once

#include "mlosim/config.hpp"
#include "mlosim/rng.hpp"
#include "mlosim/scenario.hpp"
#include "mlosim/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mlosim {

/// One downlink flow. A video station carries a single flow for the whole run;
/// a data station carries one flow per ON period.
struct Flow {
    FlowId id = 0;
    BssId bss_id = 0;
    StationId sta_id = 0;
    /// Position of the station inside its BSS's station list.
    std::uint32_t sta_index = 0;
    TrafficKind kind = TrafficKind::Data;
    double load_mbps = 0.0;
    double t_start = 0.0;
    double t_end = 0.0;
    /// Traffic-to-link split; filled in by the owning AP's policy.
    Weights weights{};
    friend bool operator==(const Flow&, const Flow&) = default;
};

enum class FlowEventKind : std::uint8_t { Departure = 0, Arrival = 1 };

struct FlowEvent {
    double time = 0.0;
    FlowEventKind kind = FlowEventKind::Arrival;
    FlowId flow = 0;
    friend bool operator==(const FlowEvent&, const FlowEvent&) = default;
};

/// Flows indexed by id, plus their arrival/departure events in (time, kind, id) order.
struct FlowSchedule {
    double horizon_s = 0.0;
    std::vector<Flow> flows;
    std::vector<FlowEvent> events;
    friend bool operator==(const FlowSchedule&, const FlowSchedule&) = default;
};

/// ON/OFF periods of one data station over [0, horizon]: ON ~ Exp(t_on), OFF ~ Exp(t_off).
/// Returns the ON intervals, the last one truncated at the horizon.
std::vector<std::pair<double, double>> on_periods(Rng& rng, const TrafficParams& params, double horizon_s);

/// Throws DomainError unless horizon > 0.
FlowSchedule build_schedule(const Scenario& scenario, double horizon_s, std::uint64_t seed,
                            const TrafficParams& params = {});

/// Order-sensitive digest of every flow (ids, station, load, lifetime); used to
/// assert that paired runs see identical traffic.
std::uint64_t schedule_hash(const FlowSchedule& schedule);

/// CSV with header flow_id,bss,sta,kind,t_start,t_end,load_mbps.
std::string schedule_to_csv(const FlowSchedule& schedule);

}  // namespace mlosim
