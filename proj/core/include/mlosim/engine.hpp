#pragma once

#include "mlosim/config.hpp"
#include "mlosim/scenario.hpp"
#include "mlosim/traffic.hpp"
#include "mlosim/types.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace mlosim {

/// Departures sort before arrivals, arrivals before MCAB ticks, at equal times.
enum class EventKind : std::uint8_t { FlowDeparture = 0, FlowArrival = 1, McabTick = 2 };

struct Event {
    double time = 0.0;
    EventKind kind = EventKind::FlowArrival;
    /// Flow id for flow events, AP (BSS) id for ticks.
    std::uint32_t id = 0;

    friend bool operator==(const Event&, const Event&) = default;
    friend bool operator<(const Event& a, const Event& b) noexcept
    {
        if (a.time != b.time) return a.time < b.time;
        if (a.kind != b.kind) return a.kind < b.kind;
        return a.id < b.id;
    }
    friend bool operator>(const Event& a, const Event& b) noexcept { return b < a; }
};

/// Ticks at phase + k * delta (k >= 1) up to and including the horizon; phase 0 gives delta, 2 delta, ...
std::vector<Event> mcab_tick_schedule(BssId ap, double delta_s, double horizon_s, double phase_s = 0.0);

struct FlowAccumulator {
    double required = 0.0;
    double allocated = 0.0;
};

/// Airtime demanded and granted to one flow (summed over its bands) during an epoch.
struct FlowRate {
    FlowId flow = 0;
    double demand = 0.0;
    double alloc = 0.0;
};

/// Adds demand * (t1 - t0) and alloc * (t1 - t0) to each flow's accumulator.
void integrate_epoch(std::span<const FlowRate> rates, double t0, double t1, std::span<FlowAccumulator> acc);

struct FlowRecord {
    FlowId id = 0;
    BssId bss = 0;
    StationId sta = 0;
    TrafficKind kind = TrafficKind::Data;
    double load_mbps = 0.0;
    double t_start = 0.0;
    double t_end = 0.0;
    /// Channel seconds required and granted over the lifetime.
    double required_airtime = 0.0;
    double allocated_airtime = 0.0;
    double satisfaction = 1.0;
    /// Weights in force when the flow ended.
    Weights weights{};
    std::uint32_t reallocations = 0;
};

struct OccupancySample {
    double time = 0.0;
    double occupancy = 0.0;
    friend bool operator==(const OccupancySample&, const OccupancySample&) = default;
};

struct EventCounts {
    std::uint64_t arrivals = 0;
    std::uint64_t departures = 0;
    std::uint64_t mcab_ticks = 0;
    std::uint64_t mcab_reallocations = 0;
    friend bool operator==(const EventCounts&, const EventCounts&) = default;
};

struct SimResult {
    std::uint64_t seed = 0;
    double horizon_s = 0.0;
    std::vector<FlowRecord> flows;
    /// congestion[ap][band]: piecewise-constant occupancy, one sample per change.
    std::vector<PerBand<std::vector<OccupancySample>>> congestion;
    /// Time-averaged occupancy per AP and band over the horizon.
    std::vector<PerBand<double>> mean_occupancy;
    /// Mean over stations of each station's mean flow satisfaction.
    std::vector<double> bss_avg_satisfaction;
    EventCounts counts;
    /// Sum of epoch lengths; equals the horizon.
    double integrated_time_s = 0.0;
};

/// Engine state right after an event has been handled and the network re-solved.
struct Snapshot {
    Event event;
    struct ActiveFlow {
        FlowId flow = 0;
        BssId bss = 0;
        Weights weights{};
        PerBand<double> demand{};
        PerBand<double> alloc{};
    };
    std::vector<ActiveFlow> active;
    /// occupancy[ap][band]
    std::vector<PerBand<double>> occupancy;
};

using SnapshotObserver = std::function<void(const Snapshot&)>;

/// Runs one simulation over [0, config.sim.horizon_s]. Throws ConfigError when the
/// schedule does not belong to the scenario or its horizon differs from the config.
SimResult run(const Scenario& scenario, const FlowSchedule& schedule, const RunConfig& config, std::uint64_t seed,
              const SnapshotObserver& observer = {});

/// Step resampling of a piecewise-constant series on [0, horizon].
std::vector<OccupancySample> resample(std::span<const OccupancySample> series, double step_s, double horizon_s);

/// Time average of a piecewise-constant series over [0, horizon].
double time_average(std::span<const OccupancySample> series, double horizon_s);

}  // namespace mlosim
