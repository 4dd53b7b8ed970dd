// mlosim: flow-level 802.11be multi-link WLAN simulator.
//
//   mlosim print-defaults
//   mlosim validate-config --config my.conf
//   mlosim run --config my.conf --seed 1 --out-dir out/run
//   mlosim experiment-a --ns 100 --seed 1 --workers 4 --out-dir out/a
//   mlosim experiment-b --ns 50 --seed 1 --out-dir out/b

#include "mlosim/config.hpp"
#include "mlosim/error.hpp"
#include "mlosim/experiment.hpp"
#include "mlosim/export.hpp"
#include "mlosim/metrics.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

namespace {

using namespace mlosim;

struct Options {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir = "out";
    int workers = 1;
    std::optional<int> ns;
    std::vector<double> fractions;
};

RunConfig load(const Options& opt)
{
    return opt.config_path.empty() ? RunConfig{} : load_config(opt.config_path);
}

int cmd_print_defaults()
{
    std::cout << "# mlosim " << kToolVersion << " default configuration\n" << to_text(RunConfig{});
    return 0;
}

int cmd_validate(const Options& opt)
{
    const RunConfig config = load(opt);
    std::cout << "ok config_hash=" << config_hash(config) << "\n";
    for (const auto& [key, value] : overrides(config)) std::cout << "  override " << key << " = " << value << "\n";
    return 0;
}

int cmd_run(const Options& opt)
{
    const RunConfig config = load(opt);
    const std::uint64_t seed = opt.seed.value_or(config.experiment.base_seed);
    const SingleRun run = run_single(config, seed);
    write_run_outputs(opt.out_dir, config, seed, run);

    std::cout << std::fixed << std::setprecision(6);
    for (std::size_t a = 0; a < run.scenario.bsses.size(); ++a)
        std::cout << "bss " << a << " " << to_string(run.scenario.bsses[a].policy) << " s_bar=" << run.result.bss_avg_satisfaction[a]
                  << "\n";
    std::cout << "events arrivals=" << run.result.counts.arrivals << " departures=" << run.result.counts.departures
              << " mcab_ticks=" << run.result.counts.mcab_ticks << "\n";
    std::cout << "wrote " << opt.out_dir << "\n";
    return 0;
}

void print_summary(const BatchSummary& s)
{
    std::cout << std::left << std::setw(10) << s.label << std::right << std::fixed << std::setprecision(4)
              << " mean=" << s.mean << " p5=" << s.percentiles.at(5.0) << " p25=" << s.percentiles.at(25.0)
              << " p50=" << s.percentiles.at(50.0) << " frac>=" << s.threshold << ": " << s.fraction_at_threshold << "\n";
}

int cmd_experiment_a(const Options& opt)
{
    const RunConfig config = load(opt);
    const int ns = opt.ns.value_or(config.experiment.ns_a);
    const std::uint64_t seed = opt.seed.value_or(config.experiment.base_seed);
    const auto result = experiment_a(config, ns, seed, opt.workers);
    write_experiment_a(opt.out_dir, config, seed, result);

    for (const auto& [policy, s] : result.summaries) print_summary(s);
    const auto& mcab = result.summaries.at(Policy::MCAB);
    for (const Policy other : {Policy::MCAA, Policy::SLCI}) {
        try {
            std::cout << "p5 gain MCAB over " << to_string(other) << ": "
                      << percentile_gain(mcab, result.summaries.at(other), 5.0) << "\n";
        } catch (const UndefinedGainError& e) {
            std::cout << "p5 gain MCAB over " << to_string(other) << ": undefined (" << e.what() << ")\n";
        }
    }
    std::cout << "wrote " << opt.out_dir << "\n";
    return 0;
}

int cmd_experiment_b(const Options& opt)
{
    const RunConfig config = load(opt);
    const int ns = opt.ns.value_or(config.experiment.ns_b);
    const std::uint64_t seed = opt.seed.value_or(config.experiment.base_seed);
    const auto fractions = opt.fractions.empty() ? config.experiment.fractions : opt.fractions;
    for (const double f : fractions)
        if (f < 0.0 || f > 1.0) throw ConfigError("--fractions: values must lie in [0, 1]");
    const auto result = experiment_b(config, fractions, ns, seed, opt.workers);
    write_experiment_b(opt.out_dir, config, seed, result);

    for (const auto& [key, s] : result.summaries) print_summary(s);
    for (const auto& check : sweep_report(result)) {
        std::cout << "median sweep " << to_string(check.mode) << ":";
        for (const double m : check.medians) std::cout << " " << m;
        std::cout << (check.non_decreasing ? "  non-decreasing" : "  NOT monotone") << " total_change=" << check.total_change
                  << "\n";
    }
    std::cout << "wrote " << opt.out_dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"mlosim: flow-level simulator of 802.11be multi-link traffic allocation policies"};
    app.set_version_flag("--version", std::string(mlosim::kToolVersion));
    app.require_subcommand(1);

    Options opt;
    auto add_config = [&opt](CLI::App* sub) { sub->add_option("--config", opt.config_path, "Configuration file (key = value)"); };
    auto add_run_flags = [&opt](CLI::App* sub) {
        sub->add_option("--seed", opt.seed, "Seed (base seed for experiments)");
        sub->add_option("--out-dir", opt.out_dir, "Output directory")->capture_default_str();
    };
    auto add_batch_flags = [&opt](CLI::App* sub) {
        sub->add_option("--workers", opt.workers, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
        sub->add_option("--ns", opt.ns, "Number of scenarios")->check(CLI::PositiveNumber);
    };

    auto* print_defaults = app.add_subcommand("print-defaults", "Print the default configuration");
    auto* validate_cfg = app.add_subcommand("validate-config", "Parse and validate a configuration file");
    add_config(validate_cfg);
    auto* run_cmd = app.add_subcommand("run", "Run one simulation and write flows.csv, congestion.csv, result.json");
    add_config(run_cmd);
    add_run_flags(run_cmd);
    auto* exp_a = app.add_subcommand("experiment-a", "Paired SLCI/MCAA/MCAB comparison with one video station");
    add_config(exp_a);
    add_run_flags(exp_a);
    add_batch_flags(exp_a);
    auto* exp_b = app.add_subcommand("experiment-b", "Coexistence sweep over the MLO share of neighbor BSSs");
    add_config(exp_b);
    add_run_flags(exp_b);
    add_batch_flags(exp_b);
    exp_b->add_option("--fractions", opt.fractions, "MLO fractions (default from config)")->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    try {
        if (*print_defaults) return cmd_print_defaults();
        if (*validate_cfg) return cmd_validate(opt);
        if (*run_cmd) return cmd_run(opt);
        if (*exp_a) return cmd_experiment_a(opt);
        if (*exp_b) return cmd_experiment_b(opt);
    } catch (const mlosim::ConfigError& e) {
        std::cerr << "invalid configuration:\n" << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
