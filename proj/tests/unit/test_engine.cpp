#include "mlosim/airtime.hpp"
#include "mlosim/engine.hpp"
#include "mlosim/error.hpp"
#include "mlosim/experiment.hpp"
#include "mlosim/radio.hpp"

#include "instances.hpp"
#include "oracle.hpp"

#include <doctest.h>

#include <cstring>

using namespace mlosim;
using doctest::Approx;

TEST_CASE("MCAB tick schedule")
{
    CHECK(mcab_tick_schedule(0, 1.0, 120.0).size() == 120);
    CHECK(mcab_tick_schedule(0, 200.0, 120.0).empty());
    const auto t = mcab_tick_schedule(3, 0.5, 2.0);
    REQUIRE(t.size() == 4);
    CHECK(t[0].time == 0.5);
    CHECK(t[1].time == 1.0);
    CHECK(t[2].time == 1.5);
    CHECK(t[3].time == 2.0);
    CHECK(t[0].kind == EventKind::McabTick);
    CHECK(t[0].id == 3);
    // 0.1 * 1200 must land on the horizon, not just past it.
    CHECK(mcab_tick_schedule(0, 0.1, 120.0).size() == 1200);
    CHECK_THROWS_AS(mcab_tick_schedule(0, 0.0, 1.0), DomainError);
}

TEST_CASE("event order at equal times")
{
    const Event dep{1.0, EventKind::FlowDeparture, 9};
    const Event arr{1.0, EventKind::FlowArrival, 1};
    const Event tick{1.0, EventKind::McabTick, 0};
    CHECK(dep < arr);
    CHECK(arr < tick);
    CHECK(Event{0.5, EventKind::McabTick, 0} < dep);
}

TEST_CASE("epoch integration")
{
    std::vector<FlowAccumulator> acc(2);
    const std::vector<FlowRate> r{{0, 0.2, 0.1}, {1, 0.5, 0.5}};
    integrate_epoch(r, 3.0, 3.0, acc);
    CHECK(acc[0].required == 0.0);
    integrate_epoch(r, 1.0, 3.0, acc);
    CHECK(acc[0].required == Approx(0.4));
    CHECK(acc[0].allocated == Approx(0.2));
    CHECK(acc[1].allocated == Approx(1.0));
}

TEST_CASE("single BSS under capacity is fully satisfied")
{
    for (const Policy p : {Policy::SLCI, Policy::MCAA, Policy::MCAB}) {
        auto in = testkit::single_bss(2.0, p, 20.0);
        testkit::add_flow(in.schedule, in.scenario, 0, 0, 22.5, 0.0, 20.0, TrafficKind::Video);
        const auto r = run(in.scenario, in.schedule, in.config, 1);
        CHECK(r.flows[0].satisfaction == 1.0);
        CHECK(r.bss_avg_satisfaction[0] == 1.0);
        CHECK(r.integrated_time_s == Approx(20.0).epsilon(1e-12));
    }
}

TEST_CASE("one flow at twice the capacity of its only band gets half")
{
    auto in = testkit::single_bss(1.0, Policy::LegacySingle, 10.0);
    in.scenario.bsses[0].capability = Capability::MBSL;
    in.scenario.bsses[0].stations[0].assigned_band = Band::Band24;
    const auto links = build_link_states(in.scenario, in.config.radio);
    const double spm = airtime_per_mbit(links[0].links[0].phy_rate_mbps, in.config.mac, in.config.radio.symbol_us);
    testkit::add_flow(in.schedule, in.scenario, 0, 0, 2.0 / spm, 0.0, 10.0);
    const auto r = run(in.scenario, in.schedule, in.config, 1);
    CHECK(r.flows[0].satisfaction == Approx(0.5).epsilon(1e-12));
    CHECK(r.flows[0].weights == Weights{1, 0, 0});
    CHECK(r.mean_occupancy[0][0] == Approx(1.0));
}

TEST_CASE("MCAB ticks: count and reallocation bookkeeping")
{
    auto in = testkit::single_bss(2.0, Policy::MCAB, 2.0);
    in.config.policy.mcab_delta_s = 0.5;
    testkit::add_flow(in.schedule, in.scenario, 0, 0, 10.0, 0.0, 2.0);
    const auto r = run(in.scenario, in.schedule, in.config, 1);
    CHECK(r.counts.mcab_ticks == 4);
    CHECK(r.counts.arrivals == 1);
    CHECK(r.counts.departures == 1);
    // Arrival plus ticks at 0.5, 1.0 and 1.5; at 2.0 the departure empties the AP first.
    CHECK(r.counts.mcab_reallocations == 4);
}

TEST_CASE("no traffic, no occupancy")
{
    RunConfig cfg;
    cfg.sim.horizon_s = 30.0;
    auto sc = make_scenario(cfg, 3, Policy::MCAB, 1.0, 5);
    for (auto& bss : sc.bsses) bss.policy = Policy::MCAB;
    FlowSchedule empty;
    empty.horizon_s = 30.0;
    const auto r = run(sc, empty, cfg, 3);
    for (const auto& ap : r.congestion)
        for (const auto& series : ap) {
            REQUIRE(series.size() == 1);
            CHECK(series[0] == OccupancySample{0.0, 0.0});
        }
    for (const auto& m : r.mean_occupancy) CHECK(m == PerBand<double>{0, 0, 0});
    CHECK(r.counts.mcab_ticks == 5 * 30);
}

TEST_CASE("full runs: invariants and bit-exact replay")
{
    RunConfig cfg;
    cfg.sim.horizon_s = 30.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        for (const Policy p : {Policy::SLCI, Policy::MCAA, Policy::MCAB, Policy::LegacySingle}) {
            cfg.policy.central = p;
            cfg.policy.mlo_fraction = 0.5;
            const auto a = run_single(cfg, seed);
            const auto b = run_single(cfg, seed);
            CHECK(a.result.integrated_time_s == Approx(30.0).epsilon(1e-12));
            for (std::size_t i = 0; i < a.result.flows.size(); ++i) {
                const auto& f = a.result.flows[i];
                CHECK(f.allocated_airtime <= f.required_airtime * (1 + 1e-12));
                CHECK(f.satisfaction <= 1.0);
                CHECK(f.satisfaction >= 0.0);
                const auto& g = b.result.flows[i];
                CHECK(std::memcmp(&f.allocated_airtime, &g.allocated_airtime, sizeof(double)) == 0);
                CHECK(f.weights == g.weights);
            }
            CHECK(a.result.bss_avg_satisfaction == b.result.bss_avg_satisfaction);
            CHECK(a.result.congestion == b.result.congestion);
            CHECK(a.result.counts == b.result.counts);
            for (const auto& ap : a.result.congestion)
                for (const auto& series : ap)
                    for (std::size_t k = 1; k < series.size(); ++k) {
                        CHECK(series[k].time > series[k - 1].time);
                        CHECK(series[k].occupancy != series[k - 1].occupancy);
                    }
        }
    }
}

TEST_CASE("removing the neighbors never lowers BSS_A satisfaction")
{
    RunConfig cfg;
    cfg.sim.horizon_s = 30.0;
    cfg.scenario.neighbor_stations = {15, 15};
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        for (const Policy p : {Policy::SLCI, Policy::MCAA, Policy::MCAB}) {
            const auto sc = make_scenario(cfg, seed, p, 0.0, 11);
            const auto sched = build_schedule(sc, 30.0, seed, cfg.traffic);
            const auto with = run(sc, sched, cfg, seed);

            Scenario alone = sc;
            alone.bsses.resize(1);
            FlowSchedule own;
            own.horizon_s = 30.0;
            for (const auto& f : sched.flows)
                if (f.bss_id == 0) testkit::add_flow(own, alone, 0, f.sta_index, f.load_mbps, f.t_start, f.t_end, f.kind);
            const auto without = run(alone, own, cfg, seed);
            CHECK(without.bss_avg_satisfaction[0] >= with.bss_avg_satisfaction[0]);
            CHECK(without.bss_avg_satisfaction[0] == 1.0);
        }
    }
}

TEST_CASE("engine matches the brute-force oracle on small instances")
{
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        const auto in = testkit::random_small(seed);
        std::vector<Snapshot> seen;
        run(in.scenario, in.schedule, in.config, seed, [&](const Snapshot& s) { seen.push_back(s); });
        const auto expect = oracle::replay(in.scenario, in.schedule, in.config);
        CAPTURE(seed);
        REQUIRE(seen.size() == expect.size());
        for (std::size_t k = 0; k < seen.size(); ++k) {
            const auto& s = seen[k];
            const auto& e = expect[k];
            CHECK(s.event.time == e.time);
            CHECK(static_cast<int>(s.event.kind) == e.kind);
            CHECK(s.event.id == e.id);
            REQUIRE(s.active.size() == e.active.size());
            for (std::size_t f = 0; f < s.active.size(); ++f) {
                CHECK(s.active[f].flow == e.active[f].id);
                for (std::size_t b = 0; b < 3; ++b) {
                    CHECK(std::abs(s.active[f].weights[b] - e.active[f].weights[b]) <= 1e-9);
                    CHECK(std::abs(s.active[f].alloc[b] - e.active[f].alloc[b]) <= 1e-9);
                }
            }
            for (std::size_t a = 0; a < s.occupancy.size(); ++a)
                for (std::size_t b = 0; b < 3; ++b) CHECK(std::abs(s.occupancy[a][b] - e.occupancy[a][b]) <= 1e-9);
        }
    }
}

TEST_CASE("mismatched inputs are configuration errors")
{
    auto in = testkit::single_bss(2.0, Policy::MCAA, 10.0);
    testkit::add_flow(in.schedule, in.scenario, 0, 0, 10.0, 0.0, 5.0);
    auto cfg = in.config;
    cfg.sim.horizon_s = 20.0;
    CHECK_THROWS_AS(run(in.scenario, in.schedule, cfg, 1), ConfigError);

    auto bad = in.schedule;
    bad.flows[0].sta_id = 99;
    CHECK_THROWS_AS(run(in.scenario, bad, in.config, 1), ConfigError);
}

TEST_CASE("time average and resampling of step series")
{
    const std::vector<OccupancySample> s{{0.0, 0.0}, {1.0, 0.5}, {3.0, 1.0}};
    CHECK(time_average(s, 4.0) == Approx((0 + 0.5 * 2 + 1.0) / 4.0));
    const auto r = resample(s, 1.0, 4.0);
    REQUIRE(r.size() == 5);
    CHECK(r[0].occupancy == 0.0);
    CHECK(r[1].occupancy == 0.5);
    CHECK(r[2].occupancy == 0.5);
    CHECK(r[3].occupancy == 1.0);
    CHECK(r[4].time == 4.0);
}
