#include "mlosim/traffic.hpp"

#include "mlosim/error.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace mlosim {

std::vector<std::pair<double, double>> on_periods(Rng& rng, const TrafficParams& params, double horizon_s)
{
    std::vector<std::pair<double, double>> out;
    double t = 0.0;
    bool on = params.start_on;
    while (t < horizon_s) {
        const double len = rng.exponential(on ? params.t_on_s : params.t_off_s);
        const double end = std::min(t + len, horizon_s);
        if (on && end > t) out.emplace_back(t, end);
        t += len;
        on = !on;
    }
    return out;
}

FlowSchedule build_schedule(const Scenario& scenario, double horizon_s, std::uint64_t seed, const TrafficParams& params)
{
    if (!(horizon_s > 0.0)) throw DomainError("build_schedule: horizon must be positive");

    FlowSchedule schedule;
    schedule.horizon_s = horizon_s;
    auto add = [&schedule](const Bss& bss, std::uint32_t sta_index, double t0, double t1) {
        const auto& sta = bss.stations[sta_index];
        Flow f;
        f.id = static_cast<FlowId>(schedule.flows.size());
        f.bss_id = bss.id;
        f.sta_id = sta.node.id;
        f.sta_index = sta_index;
        f.kind = sta.traffic_kind;
        f.load_mbps = sta.load_mbps;
        f.t_start = t0;
        f.t_end = t1;
        schedule.flows.push_back(f);
    };

    for (const auto& bss : scenario.bsses) {
        for (std::uint32_t i = 0; i < bss.stations.size(); ++i) {
            const auto& sta = bss.stations[i];
            if (sta.traffic_kind == TrafficKind::Video) {
                add(bss, i, 0.0, horizon_s);
                continue;
            }
            // Per-station stream: a station's ON/OFF process does not depend on which
            // other stations exist.
            Rng rng(mix64(seed) ^ mix64(0x5a17ULL + sta.node.id), Stream::Traffic);
            for (const auto& [t0, t1] : on_periods(rng, params, horizon_s)) add(bss, i, t0, t1);
        }
    }

    schedule.events.reserve(2 * schedule.flows.size());
    for (const auto& f : schedule.flows) {
        schedule.events.push_back({f.t_start, FlowEventKind::Arrival, f.id});
        schedule.events.push_back({f.t_end, FlowEventKind::Departure, f.id});
    }
    std::sort(schedule.events.begin(), schedule.events.end(), [](const FlowEvent& a, const FlowEvent& b) {
        if (a.time != b.time) return a.time < b.time;
        if (a.kind != b.kind) return a.kind < b.kind;
        return a.flow < b.flow;
    });
    return schedule;
}

std::uint64_t schedule_hash(const FlowSchedule& schedule)
{
    std::uint64_t h = fnv1a64("schedule");
    auto mix = [&h](auto v) {
        const auto bits = std::bit_cast<std::array<char, sizeof(v)>>(v);
        h = fnv1a64(std::string_view(bits.data(), bits.size()), h);
    };
    mix(schedule.horizon_s);
    for (const auto& f : schedule.flows) {
        mix(f.id);
        mix(f.bss_id);
        mix(f.sta_id);
        mix(static_cast<std::uint32_t>(f.kind));
        mix(f.load_mbps);
        mix(f.t_start);
        mix(f.t_end);
    }
    return h;
}

std::string schedule_to_csv(const FlowSchedule& schedule)
{
    std::ostringstream out;
    out << "flow_id,bss,sta,kind,t_start,t_end,load_mbps\n";
    for (const auto& f : schedule.flows) {
        out << f.id << ',' << f.bss_id << ',' << f.sta_id << ',' << to_string(f.kind) << ',' << format_double(f.t_start)
            << ',' << format_double(f.t_end) << ',' << format_double(f.load_mbps) << '\n';
    }
    return out.str();
}

}  // namespace mlosim
