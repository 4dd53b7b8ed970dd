#include "mlosim/experiment.hpp"
#include "mlosim/export.hpp"

#include <json.hpp>

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace mlosim;

namespace {

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunConfig short_config()
{
    RunConfig cfg;
    cfg.sim.horizon_s = 15.0;
    return cfg;
}

}  // namespace

TEST_CASE("CSV files open with a provenance line")
{
    const auto cfg = short_config();
    const auto run = run_single(cfg, 4);
    const auto line = provenance_line(cfg, 4);
    CHECK(line == "# mlosim " + std::string(kToolVersion) + " config_hash=" + config_hash(cfg) + " seed=4\n");

    const auto flows = flows_csv(cfg, run.result);
    CHECK(flows.rfind(line, 0) == 0);
    CHECK(flows.find("flow_id,bss,sta,kind,load_mbps,t_start,t_end,required_airtime,allocated_airtime,satisfaction,"
                     "w_2g4,w_5g,w_6g\n") == line.size());
    CHECK(static_cast<std::size_t>(std::count(flows.begin(), flows.end(), '\n')) == run.result.flows.size() + 2);
}

TEST_CASE("congestion.csv round-trips the recorded series")
{
    const auto cfg = short_config();
    const auto run = run_single(cfg, 4);
    const auto parsed = parse_congestion_csv(congestion_csv(cfg, run.result));
    REQUIRE(parsed.size() == run.result.congestion.size());
    for (std::size_t a = 0; a < parsed.size(); ++a)
        for (std::size_t b = 0; b < 3; ++b) CHECK(parsed[a][b] == run.result.congestion[a][b]);

    auto resampled = cfg;
    resampled.sim.congestion_resample_s = 0.5;
    const auto grid = parse_congestion_csv(congestion_csv(resampled, run.result));
    CHECK(grid[0][0].size() == 31);
}

TEST_CASE("result.json carries the run")
{
    const auto cfg = short_config();
    const auto run = run_single(cfg, 4);
    const auto doc = nlohmann::json::parse(result_json(cfg, run));
    CHECK(doc["meta"]["config_hash"] == config_hash(cfg));
    CHECK(doc["meta"]["seed"] == 4);
    CHECK(doc["meta"]["overrides"]["sim.horizon_s"] == "15");
    CHECK(doc["flows"].size() == run.result.flows.size());
    CHECK(doc["bss"].size() == 5);
    CHECK(doc["bss"][0]["policy"] == "MCAB");
    CHECK(doc["events"]["mcab_ticks"] == run.result.counts.mcab_ticks);
    CHECK(doc["congestion"].size() == 15);
}

TEST_CASE("run outputs on disk")
{
    const auto cfg = short_config();
    const auto run = run_single(cfg, 2);
    const auto dir = std::filesystem::temp_directory_path() / "mlosim_test_export";
    std::filesystem::remove_all(dir);
    write_run_outputs(dir, cfg, 2, run);
    for (const char* f : {"flows.csv", "congestion.csv", "result.json", "scenario.json", "schedule.csv"})
        CHECK(std::filesystem::exists(dir / f));
    const auto sc = nlohmann::json::parse(slurp(dir / "scenario.json"));
    CHECK(sc["meta"]["seed"] == 2);
    std::filesystem::remove_all(dir);
}

TEST_CASE("experiment outputs")
{
    auto cfg = short_config();
    const auto dir = std::filesystem::temp_directory_path() / "mlosim_test_experiments";
    std::filesystem::remove_all(dir);

    const auto a = experiment_a(cfg, 4, 1, 2);
    CHECK(a.rows.size() == 12);
    // Paired runs share their traffic.
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(a.rows[3 * i].schedule_hash == a.rows[3 * i + 1].schedule_hash);
        CHECK(a.rows[3 * i].schedule_hash == a.rows[3 * i + 2].schedule_hash);
    }
    // Worker count does not change results.
    const auto a1 = experiment_a(cfg, 4, 1, 1);
    for (std::size_t i = 0; i < a.rows.size(); ++i) CHECK(a.rows[i].s_bar == a1.rows[i].s_bar);
    write_experiment_a(dir / "a", cfg, 1, a);
    for (const char* f : {"summary.csv", "cdf.csv", "percentiles.csv"}) CHECK(std::filesystem::exists(dir / "a" / f));
    CHECK(slurp(dir / "a" / "percentiles.csv").find("policy,n,mean,p5,p25,p50,p95,threshold,fraction_at_threshold") !=
          std::string::npos);

    const auto b = experiment_b(cfg, {0.0, 1.0}, 2, 1, 1);
    CHECK(b.rows.size() == 2 * 2 * 4);
    write_experiment_b(dir / "b", cfg, 1, b);
    const auto sweep = slurp(dir / "b" / "sweep.csv");
    CHECK(sweep.find("mode,median@0,median@1,non_decreasing,total_change") != std::string::npos);
    CHECK(sweep.find("\nMBSL,") != std::string::npos);
    std::filesystem::remove_all(dir);
}
