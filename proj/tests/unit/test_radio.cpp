#include "mlosim/error.hpp"
#include "mlosim/experiment.hpp"
#include "mlosim/radio.hpp"

#include "instances.hpp"
#include "oracle.hpp"

#include <doctest.h>

using namespace mlosim;
using doctest::Approx;

TEST_CASE("path loss at the reference frequency")
{
    CHECK(path_loss_db(1.0, 2.4) == Approx(40.05).epsilon(1e-12));
    CHECK(path_loss_db(5.0, 2.4) == Approx(54.0294).epsilon(1e-5));
    CHECK(path_loss_db(5.0, 2.4) == Approx(54.03).epsilon(1e-4));
}

TEST_CASE("path loss beyond the breakpoint on the 6 GHz carrier")
{
    // 40.05 + 20 log10(6.295/2.4) + 20 log10(5) + 35 log10(2)
    const double expected = 40.05 + 20 * std::log10(6.295 / 2.4) + 20 * std::log10(5.0) + 35 * std::log10(2.0);
    CHECK(path_loss_db(10.0, Band::Band6) == Approx(expected).epsilon(1e-12));
    CHECK(path_loss_db(10.0, Band::Band6) == Approx(72.94).epsilon(1e-4));
}

TEST_CASE("path loss is continuous at the breakpoint and increasing in distance")
{
    CHECK(path_loss_db(5.0 - 1e-9, 5.2) == Approx(path_loss_db(5.0 + 1e-9, 5.2)).epsilon(1e-9));
    double prev = path_loss_db(0.1, 2.437);
    for (double d = 0.2; d < 60; d += 0.1) {
        const double v = path_loss_db(d, 2.437);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("path loss rejects non-positive distance")
{
    CHECK_THROWS_AS(path_loss_db(0.0, 2.4), DomainError);
    CHECK_THROWS_AS(path_loss_db(-1.0, 2.4), DomainError);
}

TEST_CASE("noise floor and SNR")
{
    CHECK(noise_floor_dbm(20, 7) == Approx(-93.99).epsilon(1e-4));
    CHECK(snr_db(-82, 20, 7) == Approx(11.99).epsilon(1e-3));
    CHECK(snr_db(noise_floor_dbm(20, 7), 20, 7) == Approx(0.0));
    CHECK(snr_db(-60, 80, 7) == Approx(27.97).epsilon(1e-3));
}

TEST_CASE("MCS rates")
{
    CHECK(mcs_rate_mbps(11, 80, 2) == Approx(2 * 980 * 10 * (5.0 / 6.0) / 13.6).epsilon(1e-12));
    CHECK(mcs_rate_mbps(11, 80, 2) == Approx(1201.0).epsilon(1e-4));
    CHECK(mcs_rate_mbps(11, 20, 2) == Approx(286.8).epsilon(1e-3));
    CHECK(mcs_rate_mbps(0, 20, 1) == Approx(234 * 0.5 / 13.6));
    CHECK_THROWS_AS(mcs_rate_mbps(12, 20, 1), DomainError);
    CHECK_THROWS_AS(data_subcarriers(30), DomainError);

    const auto hi = select_mcs(40, 80, 2);
    REQUIRE(hi.index);
    CHECK(*hi.index == 11);
    CHECK(hi.phy_rate_mbps == Approx(1201.0).epsilon(1e-4));
    CHECK(select_mcs(40, 20, 2).phy_rate_mbps == Approx(286.8).epsilon(1e-3));

    const auto none = select_mcs(-5, 20, 2);
    CHECK_FALSE(none.index);
    CHECK(none.phy_rate_mbps == 0.0);
}

TEST_CASE("MCS selection hits every threshold exactly")
{
    const RadioParams r;
    for (int m = 0; m < 12; ++m) {
        const auto at = select_mcs(r.mcs_thresholds_db[m], 40, 2, r);
        REQUIRE(at.index);
        CHECK(*at.index == m);
        const auto below = select_mcs(r.mcs_thresholds_db[m] - 1e-9, 40, 2, r);
        if (m == 0)
            CHECK_FALSE(below.index);
        else
            CHECK(*below.index == m - 1);
    }
}

TEST_CASE("station at 1 m enables all three bands")
{
    auto in = testkit::single_bss(1.0, Policy::MCAA);
    const auto links = build_link_states(in.scenario);
    REQUIRE(links.size() == 1);
    CHECK(links[0].enabled() == BandSet::all());
    for (const auto& l : links[0].links) CHECK(l.rx_power_dbm > -82.0);
}

TEST_CASE("MB-SL station only uses its assigned band")
{
    auto in = testkit::single_bss(1.0, Policy::LegacySingle);
    in.scenario.bsses[0].stations[0].assigned_band = Band::Band5;
    const auto links = build_link_states(in.scenario);
    CHECK(links[0].enabled() == BandSet{Band::Band5});
}

TEST_CASE("a station beyond coverage on every band is an invalid scenario")
{
    auto in = testkit::single_bss(500.0, Policy::MCAA);
    CHECK_THROWS_AS(build_link_states(in.scenario), InvalidScenarioError);
}

TEST_CASE("link states agree with an independent link budget")
{
    const RunConfig cfg;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const auto sc = make_scenario(cfg, seed, Policy::MCAB, 0.5, 5);
        const auto links = build_link_states(sc, cfg.radio, cfg.path_loss);
        std::size_t k = 0;
        for (const auto& bss : sc.bsses) {
            for (const auto& st : bss.stations) {
                const double d = std::hypot(bss.ap.position.x - st.node.position.x, bss.ap.position.y - st.node.position.y);
                for (int b = 0; b < 3; ++b) {
                    const auto& bp = cfg.radio.bands[b];
                    const double rx = cfg.radio.ap_tx_dbm - oracle::pl(d, bp.carrier_ghz, cfg.path_loss);
                    const double noise = -174 + 10 * std::log10(bp.bandwidth_mhz * 1e6) + 7;
                    const double rate = oracle::phy_rate(rx - noise, bp.bandwidth_mhz, cfg.radio);
                    const auto& l = links[k].links[b];
                    CHECK(l.rx_power_dbm == Approx(rx).epsilon(1e-12));
                    CHECK(l.phy_rate_mbps == Approx(rate).epsilon(1e-12));
                    const bool en = rx >= -82 && rate > 0 && (!st.assigned_band || static_cast<int>(*st.assigned_band) == b);
                    CHECK(l.enabled == en);
                }
                ++k;
            }
        }
    }
}

TEST_CASE("contention graphs")
{
    RunConfig cfg;
    Scenario sc;
    sc.bsses.push_back(testkit::make_bss(0, {0, 0}, cfg));
    CHECK(build_contention_graphs(sc)[0].edge_count() == 0);

    sc.bsses.push_back(testkit::make_bss(1, {3, 0}, cfg));
    CHECK(20.0 - path_loss_db(3.0, Band::Band24) == Approx(-29.6).epsilon(1e-2));
    for (const auto& g : build_contention_graphs(sc)) {
        CHECK(g.adjacent(0, 1));
        CHECK(g.adjacent(1, 0));
        CHECK_FALSE(g.adjacent(0, 0));
    }

    // 100 m apart: heard on 2.4 GHz only.
    sc.bsses[1].ap.position = {100, 0};
    const auto far = build_contention_graphs(sc);
    CHECK(far[0].adjacent(0, 1));
    CHECK_FALSE(far[1].adjacent(0, 1));
    CHECK_FALSE(far[2].adjacent(0, 1));
}

TEST_CASE("eleven BSSs in 20x20 m contend on every band")
{
    const RunConfig cfg;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto sc = make_scenario(cfg, seed, Policy::MCAB, 1.0, 11);
        for (const auto& g : build_contention_graphs(sc)) CHECK(g.edge_count() == 55);
    }
    // Worst case: the area diagonal on 6 GHz.
    CHECK(20.0 - path_loss_db(std::sqrt(800.0), Band::Band6) > -82.0);
}
