#include "mlosim/config.hpp"
#include "mlosim/error.hpp"

#include <doctest.h>

#include <string>

using namespace mlosim;

TEST_CASE("defaults carry the reference parameter set")
{
    const RunConfig c;
    CHECK(c.radio.bands[0].carrier_ghz == 2.437);
    CHECK(c.radio.bands[1].bandwidth_mhz == 40.0);
    CHECK(c.radio.bands[2].bandwidth_mhz == 80.0);
    CHECK(c.radio.ap_tx_dbm == 20.0);
    CHECK(c.radio.sta_tx_dbm == 15.0);
    CHECK(c.radio.cca_dbm == -82.0);
    CHECK(c.radio.noise_figure_db == 7.0);
    CHECK(c.radio.spatial_streams == 2);
    CHECK(c.mac.mpdu_bytes == 1500.0);
    CHECK(c.mac.per == 0.1);
    CHECK_FALSE(c.mac.efficiency.has_value());
    CHECK(c.traffic.t_on_s == 3.0);
    CHECK(c.traffic.t_off_s == 1.0);
    CHECK(c.policy.mcab_delta_s == 1.0);
    CHECK(c.sim.horizon_s == 120.0);
    CHECK(c.scenario.n_bss == 5);
    CHECK(validate(c).empty());
}

TEST_CASE("printed defaults parse back to the same configuration")
{
    const RunConfig c;
    const RunConfig back = parse_config(to_text(c));
    CHECK(back == c);
    CHECK(config_hash(back) == config_hash(c));
    CHECK(overrides(c).empty());
}

TEST_CASE("parsing: comments, whitespace, overrides")
{
    const auto c = parse_config(R"(
# comment line
  policy.central   =  SLCI    # trailing comment
mac.efficiency = 0.85
experiment.fractions = 0, 0.5, 1
sim.record_congestion = false
)");
    CHECK(c.policy.central == Policy::SLCI);
    REQUIRE(c.mac.efficiency.has_value());
    CHECK(*c.mac.efficiency == 0.85);
    CHECK(c.experiment.fractions == std::vector<double>{0, 0.5, 1});
    CHECK_FALSE(c.sim.record_congestion);
    CHECK(overrides(c).size() == 4);
    CHECK(config_hash(c) != config_hash(RunConfig{}));

    CHECK_FALSE(parse_config("mac.efficiency = mpdu").mac.efficiency.has_value());
    CHECK(parse_config("policy.central = MBSL").policy.central == Policy::LegacySingle);
}

TEST_CASE("every problem is reported with its line number")
{
    std::string msg;
    try {
        parse_config("sim.horizon_s = 10\nbogus.key = 1\nradio.cca_dbm = abc\nno equals sign\nmac.per = 1.5\n");
    } catch (const ConfigError& e) {
        msg = e.what();
    }
    CHECK(msg.find("line 2: unknown key 'bogus.key'") != std::string::npos);
    CHECK(msg.find("line 3: radio.cca_dbm") != std::string::npos);
    CHECK(msg.find("line 4: expected 'key = value'") != std::string::npos);
    CHECK(msg.find("mac.per") != std::string::npos);
}

TEST_CASE("validation rejects out-of-domain values")
{
    for (const char* text : {"sim.horizon_s = 0", "policy.mlo_fraction = 1.2", "policy.mcab_delta_s = 0",
                             "radio.band.5g.bandwidth_mhz = 30", "mac.efficiency = 0", "traffic.t_on_s = -1",
                             "experiment.fractions = 0, 2", "radio.mcs_thresholds_db = 1, 2, 3",
                             "metrics.quantile = linear", "policy.central = fastest"}) {
        CAPTURE(text);
        CHECK_THROWS_AS(parse_config(text), ConfigError);
    }
}

TEST_CASE("hash and number formatting are stable")
{
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(config_hash(RunConfig{}).size() == 16);
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(120) == "120");
    CHECK(format_double(2.437) == "2.437");
}
