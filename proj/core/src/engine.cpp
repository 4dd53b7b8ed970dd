#include "mlosim/engine.hpp"

#include "mlosim/airtime.hpp"
#include "mlosim/error.hpp"
#include "mlosim/policy.hpp"
#include "mlosim/radio.hpp"
#include "mlosim/rng.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace mlosim {

std::vector<Event> mcab_tick_schedule(BssId ap, double delta_s, double horizon_s, double phase_s)
{
    if (!(delta_s > 0.0)) throw DomainError("mcab_tick_schedule: delta must be positive");
    std::vector<Event> ticks;
    // k * delta rather than repeated addition, so 0.5 * 4 lands exactly on 2.0.
    for (std::uint64_t k = 1;; ++k) {
        const double t = phase_s + static_cast<double>(k) * delta_s;
        if (t > horizon_s * (1.0 + 1e-12)) break;
        ticks.push_back({std::min(t, horizon_s), EventKind::McabTick, ap});
    }
    return ticks;
}

void integrate_epoch(std::span<const FlowRate> rates, double t0, double t1, std::span<FlowAccumulator> acc)
{
    const double dt = t1 - t0;
    if (dt <= 0.0) return;
    for (const auto& r : rates) {
        acc[r.flow].required += r.demand * dt;
        acc[r.flow].allocated += r.alloc * dt;
    }
}

double time_average(std::span<const OccupancySample> series, double horizon_s)
{
    if (series.empty() || !(horizon_s > 0.0)) return 0.0;
    double area = 0.0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double t0 = series[i].time;
        const double t1 = i + 1 < series.size() ? series[i + 1].time : horizon_s;
        area += series[i].occupancy * (std::min(t1, horizon_s) - std::min(t0, horizon_s));
    }
    return area / horizon_s;
}

std::vector<OccupancySample> resample(std::span<const OccupancySample> series, double step_s, double horizon_s)
{
    std::vector<OccupancySample> out;
    if (series.empty() || !(step_s > 0.0)) return out;
    std::size_t i = 0;
    for (std::uint64_t k = 0;; ++k) {
        const double t = static_cast<double>(k) * step_s;
        if (t > horizon_s) break;
        while (i + 1 < series.size() && series[i + 1].time <= t) ++i;
        out.push_back({t, series[i].time <= t ? series[i].occupancy : 0.0});
    }
    return out;
}

namespace {

class Simulation {
public:
    Simulation(const Scenario& scenario, const FlowSchedule& schedule, const RunConfig& config, std::uint64_t seed,
               const SnapshotObserver& observer)
        : scenario_(scenario), schedule_(schedule), config_(config), seed_(seed), observer_(observer),
          n_aps_(scenario.bsses.size())
    {
        validate_inputs();

        const auto links = build_link_states(scenario, config.radio, config.path_loss);
        station_offset_.resize(n_aps_);
        std::size_t offset = 0;
        for (std::size_t a = 0; a < n_aps_; ++a) {
            station_offset_[a] = offset;
            offset += scenario.bsses[a].stations.size();
        }
        stations_.resize(links.size());
        for (std::size_t s = 0; s < links.size(); ++s) {
            stations_[s].enabled = links[s].enabled();
            for (const Band b : kAllBands) {
                const auto& l = links[s].links[index(b)];
                stations_[s].airtime_per_mbit[index(b)] =
                    l.enabled ? airtime_per_mbit(l.phy_rate_mbps, config.mac, config.radio.symbol_us) : 0.0;
            }
        }

        const auto graphs = build_contention_graphs(scenario, config.radio, config.path_loss);
        for (const Band b : kAllBands) {
            const auto i = index(b);
            scalers_[i] = CliqueScaler(graphs[i]);
            ap_demand_[i].assign(n_aps_, 0.0);
            scale_[i].assign(n_aps_, 1.0);
            ap_alloc_[i].assign(n_aps_, 0.0);
            occupancy_[i].assign(n_aps_, 0.0);
        }

        flows_.resize(schedule.flows.size());
        acc_.resize(schedule.flows.size());
        active_.resize(n_aps_);
        occ_integral_.assign(n_aps_, PerBand<double>{});

        result_.seed = seed;
        result_.horizon_s = horizon_;
        result_.congestion.resize(config.sim.record_congestion ? n_aps_ : 0);
    }

    SimResult run()
    {
        using Queue = std::priority_queue<Event, std::vector<Event>, std::greater<>>;
        std::vector<Event> initial;
        initial.reserve(schedule_.events.size() + n_aps_ * 128);
        for (const auto& fe : schedule_.events)
            initial.push_back({fe.time, fe.kind == FlowEventKind::Arrival ? EventKind::FlowArrival : EventKind::FlowDeparture,
                               fe.flow});

        Rng phase_rng(seed_, Stream::TickPhase);
        const double delta = config_.policy.mcab_delta_s;
        for (std::size_t a = 0; a < n_aps_; ++a) {
            // With a random phase the first tick falls uniformly in [0, delta).
            const double phase = config_.policy.random_tick_phase ? phase_rng.uniform(0.0, delta) - delta : 0.0;
            if (scenario_.bsses[a].policy != Policy::MCAB) continue;
            for (const auto& tick : mcab_tick_schedule(static_cast<BssId>(a), delta, horizon_, phase))
                if (tick.time > 0.0) initial.push_back(tick);
        }
        Queue queue(std::greater<>{}, std::move(initial));

        record_congestion(0.0);
        double now = 0.0;
        while (!queue.empty()) {
            const Event ev = queue.top();
            queue.pop();
            if (ev.time > horizon_) break;
            integrate(now, ev.time);
            now = ev.time;
            handle(ev);
            solve();
            record_congestion(now);
            if (observer_) observer_(snapshot(ev));
        }
        integrate(now, horizon_);
        return finish();
    }

private:
    struct StationInfo {
        BandSet enabled;
        PerBand<double> airtime_per_mbit{};
    };

    struct FlowState {
        bool active = false;
        Weights weights{};
        PerBand<double> demand{};
        std::uint32_t reallocations = 0;
    };

    void validate_inputs()
    {
        horizon_ = config_.sim.horizon_s;
        if (std::abs(schedule_.horizon_s - horizon_) > 1e-9)
            throw ConfigError("engine: schedule horizon " + format_double(schedule_.horizon_s) +
                              " s differs from sim.horizon_s " + format_double(horizon_));
        for (std::size_t i = 0; i < schedule_.flows.size(); ++i) {
            const Flow& f = schedule_.flows[i];
            if (f.id != i) throw ConfigError("engine: flow ids must be dense and ordered");
            if (f.bss_id >= n_aps_ || f.sta_index >= scenario_.bsses[f.bss_id].stations.size() ||
                scenario_.bsses[f.bss_id].stations[f.sta_index].node.id != f.sta_id)
                throw ConfigError("engine: flow " + std::to_string(f.id) + " does not match any scenario station");
            if (!(f.t_start < f.t_end) || f.t_end > horizon_ + 1e-9)
                throw ConfigError("engine: flow " + std::to_string(f.id) + " has an invalid lifetime");
        }
        for (const auto& bss : scenario_.bsses)
            if (bss.policy == Policy::MCAB && !(config_.policy.mcab_delta_s > 0.0))
                throw ConfigError("engine: MCAB needs a positive adaptation period");
    }

    std::size_t station_of(const Flow& f) const { return station_offset_[f.bss_id] + f.sta_index; }

    void set_weights(FlowId id, const Weights& w)
    {
        const Flow& f = schedule_.flows[id];
        const auto& st = stations_[station_of(f)];
        FlowState& fs = flows_[id];
        fs.weights = w;
        for (const Band b : kAllBands) fs.demand[index(b)] = f.load_mbps * w[index(b)] * st.airtime_per_mbit[index(b)];
    }

    double free_airtime(std::size_t ap, Band b) const { return std::max(0.0, 1.0 - occupancy_[index(b)][ap]); }

    // Free airtime at `ap` with every one of its own flows taken out of the busy sum.
    double free_without_own(std::size_t ap, Band b) const
    {
        const auto i = index(b);
        double busy = 0.0;
        for (const auto c : scalers_[i].sensed(ap))
            if (c != ap) busy += ap_alloc_[i][c];
        return std::max(0.0, 1.0 - std::min(1.0, busy));
    }

    void reallocate(std::size_t ap)
    {
        std::vector<McabFlow> view;
        view.reserve(active_[ap].size());
        for (const FlowId id : active_[ap]) {
            const Flow& f = schedule_.flows[id];
            const auto& st = stations_[station_of(f)];
            view.push_back({id, st.enabled, f.t_start, f.load_mbps, st.airtime_per_mbit});
        }
        const auto assignment = mcab_reallocate(view, [this, ap](Band b) { return free_without_own(ap, b); });
        for (const auto& [id, w] : assignment) {
            set_weights(id, w);
            ++flows_[id].reallocations;
        }
        ++result_.counts.mcab_reallocations;
    }

    void handle(const Event& ev)
    {
        switch (ev.kind) {
        case EventKind::FlowDeparture: {
            ++result_.counts.departures;
            const Flow& f = schedule_.flows[ev.id];
            auto& list = active_[f.bss_id];
            list.erase(std::remove(list.begin(), list.end(), ev.id), list.end());
            flows_[ev.id].active = false;
            break;
        }
        case EventKind::FlowArrival: {
            ++result_.counts.arrivals;
            const Flow& f = schedule_.flows[ev.id];
            const Bss& bss = scenario_.bsses[f.bss_id];
            const auto& st = stations_[station_of(f)];
            flows_[ev.id].active = true;
            active_[f.bss_id].push_back(ev.id);

            PolicyInput in;
            in.flow = f.id;
            in.enabled = st.enabled;
            in.arrival_time = ev.time;
            for (const Band b : kAllBands) in.rho[index(b)] = free_airtime(f.bss_id, b);
            switch (bss.policy) {
            case Policy::SLCI: set_weights(f.id, slci(in)); break;
            case Policy::MCAA: set_weights(f.id, mcaa(in)); break;
            case Policy::LegacySingle: {
                const auto& sta = bss.stations[f.sta_index];
                if (!sta.assigned_band)
                    throw InvalidScenarioError("engine: MB-SL station " + std::to_string(f.sta_id) + " has no band");
                set_weights(f.id, legacy_assign(in, *sta.assigned_band));
                break;
            }
            case Policy::MCAB: reallocate(f.bss_id); break;
            }
            break;
        }
        case EventKind::McabTick:
            ++result_.counts.mcab_ticks;
            if (!active_[ev.id].empty()) reallocate(ev.id);
            break;
        }
    }

    void solve()
    {
        for (const Band b : kAllBands) {
            const auto i = index(b);
            auto& demand = ap_demand_[i];
            std::fill(demand.begin(), demand.end(), 0.0);
            for (std::size_t a = 0; a < n_aps_; ++a)
                for (const FlowId id : active_[a]) demand[a] += flows_[id].demand[i];
            scalers_[i].scale(demand, scale_[i]);
            for (std::size_t a = 0; a < n_aps_; ++a) ap_alloc_[i][a] = demand[a] * scale_[i][a];
            scalers_[i].occupancy(ap_alloc_[i], occupancy_[i]);
        }
    }

    void integrate(double t0, double t1)
    {
        if (t1 <= t0) return;
        rates_.clear();
        for (std::size_t a = 0; a < n_aps_; ++a) {
            for (const FlowId id : active_[a]) {
                FlowRate r{id, 0.0, 0.0};
                for (const Band b : kAllBands) {
                    const double d = flows_[id].demand[index(b)];
                    r.demand += d;
                    r.alloc += d * scale_[index(b)][a];
                }
                rates_.push_back(r);
            }
            for (const Band b : kAllBands) occ_integral_[a][index(b)] += occupancy_[index(b)][a] * (t1 - t0);
        }
        integrate_epoch(rates_, t0, t1, acc_);
        result_.integrated_time_s += t1 - t0;
    }

    void record_congestion(double t)
    {
        for (std::size_t a = 0; a < result_.congestion.size(); ++a) {
            for (const Band b : kAllBands) {
                auto& series = result_.congestion[a][index(b)];
                const double occ = occupancy_[index(b)][a];
                if (!series.empty() && series.back().time == t) {
                    series.back().occupancy = occ;
                    if (series.size() >= 2 && series[series.size() - 2].occupancy == occ) series.pop_back();
                } else if (series.empty() || series.back().occupancy != occ) {
                    series.push_back({t, occ});
                }
            }
        }
    }

    Snapshot snapshot(const Event& ev) const
    {
        Snapshot s;
        s.event = ev;
        for (std::size_t a = 0; a < n_aps_; ++a) {
            for (const FlowId id : active_[a]) {
                Snapshot::ActiveFlow af;
                af.flow = id;
                af.bss = static_cast<BssId>(a);
                af.weights = flows_[id].weights;
                af.demand = flows_[id].demand;
                for (const Band b : kAllBands) af.alloc[index(b)] = af.demand[index(b)] * scale_[index(b)][a];
                s.active.push_back(af);
            }
        }
        std::sort(s.active.begin(), s.active.end(),
                  [](const Snapshot::ActiveFlow& x, const Snapshot::ActiveFlow& y) { return x.flow < y.flow; });
        s.occupancy.resize(n_aps_);
        for (std::size_t a = 0; a < n_aps_; ++a)
            for (const Band b : kAllBands) s.occupancy[a][index(b)] = occupancy_[index(b)][a];
        return s;
    }

    SimResult finish()
    {
        result_.flows.reserve(schedule_.flows.size());
        std::vector<double> station_sum(stations_.size(), 0.0);
        std::vector<std::uint32_t> station_flows(stations_.size(), 0);
        for (const Flow& f : schedule_.flows) {
            FlowRecord r;
            r.id = f.id;
            r.bss = f.bss_id;
            r.sta = f.sta_id;
            r.kind = f.kind;
            r.load_mbps = f.load_mbps;
            r.t_start = f.t_start;
            r.t_end = f.t_end;
            r.required_airtime = acc_[f.id].required;
            r.allocated_airtime = acc_[f.id].allocated;
            r.satisfaction = r.required_airtime > 0.0 ? std::min(1.0, r.allocated_airtime / r.required_airtime) : 1.0;
            r.weights = flows_[f.id].weights;
            r.reallocations = flows_[f.id].reallocations;
            station_sum[station_of(f)] += r.satisfaction;
            ++station_flows[station_of(f)];
            result_.flows.push_back(r);
        }

        result_.bss_avg_satisfaction.assign(n_aps_, 1.0);
        for (std::size_t a = 0; a < n_aps_; ++a) {
            double sum = 0.0;
            std::size_t counted = 0;
            for (std::size_t s = 0; s < scenario_.bsses[a].stations.size(); ++s) {
                const auto k = station_offset_[a] + s;
                if (station_flows[k] == 0) continue;
                sum += station_sum[k] / station_flows[k];
                ++counted;
            }
            if (counted > 0) result_.bss_avg_satisfaction[a] = sum / static_cast<double>(counted);
        }

        result_.mean_occupancy.resize(n_aps_);
        for (std::size_t a = 0; a < n_aps_; ++a)
            for (const Band b : kAllBands) result_.mean_occupancy[a][index(b)] = occ_integral_[a][index(b)] / horizon_;
        return std::move(result_);
    }

    const Scenario& scenario_;
    const FlowSchedule& schedule_;
    const RunConfig& config_;
    std::uint64_t seed_;
    const SnapshotObserver& observer_;
    std::size_t n_aps_;
    double horizon_ = 0.0;

    std::vector<std::size_t> station_offset_;
    std::vector<StationInfo> stations_;
    PerBand<CliqueScaler> scalers_;
    PerBand<std::vector<double>> ap_demand_, scale_, ap_alloc_, occupancy_;
    std::vector<FlowState> flows_;
    std::vector<FlowAccumulator> acc_;
    std::vector<std::vector<FlowId>> active_;
    std::vector<PerBand<double>> occ_integral_;
    std::vector<FlowRate> rates_;
    SimResult result_;
};

}  // namespace

SimResult run(const Scenario& scenario, const FlowSchedule& schedule, const RunConfig& config, std::uint64_t seed,
              const SnapshotObserver& observer)
{
    return Simulation(scenario, schedule, config, seed, observer).run();
}

}  // namespace mlosim
