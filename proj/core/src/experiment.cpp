#include "mlosim/experiment.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace mlosim {

Scenario make_scenario(const RunConfig& config, std::uint64_t seed, Policy central, double mlo_fraction, int n_bss)
{
    ScenarioParams params = config.scenario;
    params.n_bss = n_bss;
    auto scenario = generate_scenario(params, config.radio, config.traffic, seed);
    return assign_policies(std::move(scenario), central, mlo_fraction, seed);
}

SingleRun run_single(const RunConfig& config, std::uint64_t seed)
{
    SingleRun out;
    out.scenario = make_scenario(config, seed, config.policy.central, config.policy.mlo_fraction, config.scenario.n_bss);
    out.schedule = build_schedule(out.scenario, config.sim.horizon_s, seed, config.traffic);
    out.result = run(out.scenario, out.schedule, config, seed);
    return out;
}

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn)
{
    const auto threads = static_cast<std::size_t>(std::max(1, workers));
    if (threads == 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < std::min(threads, n); ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) {
                    try {
                        fn(i);
                    } catch (...) {
                        const std::lock_guard lock(error_mutex);
                        if (!error) error = std::current_exception();
                        next = n;
                    }
                }
            });
        }
    }
    if (error) std::rethrow_exception(error);
}

ExperimentAResult experiment_a(const RunConfig& config, int ns, std::uint64_t base_seed, int workers)
{
    RunConfig cfg = config;
    cfg.sim.record_congestion = false;
    const auto n = static_cast<std::size_t>(ns);
    const std::size_t k = kExperimentAPolicies.size();
    std::vector<ExperimentARow> rows(n * k);

    parallel_for(n, workers, [&](std::size_t i) {
        const std::uint64_t seed = base_seed + i;
        for (std::size_t p = 0; p < k; ++p) {
            const Policy policy = kExperimentAPolicies[p];
            const auto scenario = make_scenario(cfg, seed, policy, cfg.policy.mlo_fraction, cfg.scenario.n_bss);
            const auto schedule = build_schedule(scenario, cfg.sim.horizon_s, seed, cfg.traffic);
            const auto result = run(scenario, schedule, cfg, seed);
            rows[i * k + p] = {i, seed, policy, result.bss_avg_satisfaction.at(0), schedule_hash(schedule)};
        }
    });

    ExperimentAResult out;
    out.rows = std::move(rows);
    for (const Policy policy : kExperimentAPolicies) {
        std::vector<double> values;
        for (const auto& r : out.rows)
            if (r.policy == policy) values.push_back(r.s_bar);
        out.summaries.emplace(policy, summarize(std::string(to_string(policy)), std::move(values), cfg.metrics));
    }
    return out;
}

ExperimentBResult experiment_b(const RunConfig& config, const std::vector<double>& fractions, int ns,
                               std::uint64_t base_seed, int workers)
{
    RunConfig cfg = config;
    cfg.sim.record_congestion = false;
    const auto n = static_cast<std::size_t>(ns);
    const std::size_t per_scenario = fractions.size() * kExperimentBModes.size();
    std::vector<ExperimentBRow> rows(n * per_scenario);

    parallel_for(n, workers, [&](std::size_t i) {
        const std::uint64_t seed = base_seed + i;
        std::size_t slot = i * per_scenario;
        for (const double fraction : fractions) {
            for (const Policy mode : kExperimentBModes) {
                const auto scenario = make_scenario(cfg, seed, mode, fraction, cfg.experiment.n_bss_b);
                const auto schedule = build_schedule(scenario, cfg.sim.horizon_s, seed, cfg.traffic);
                const auto result = run(scenario, schedule, cfg, seed);
                rows[slot++] = {i, seed, mode, fraction, result.bss_avg_satisfaction.at(0)};
            }
        }
    });

    ExperimentBResult out;
    out.fractions = fractions;
    out.rows = std::move(rows);
    for (const Policy mode : kExperimentBModes) {
        for (const double fraction : fractions) {
            std::vector<double> values;
            for (const auto& r : out.rows)
                if (r.mode == mode && r.fraction == fraction) values.push_back(r.s_bar);
            auto label = std::string(to_string(mode)) + "@" + format_double(fraction);
            out.summaries.emplace(std::pair{mode, fraction}, summarize(std::move(label), std::move(values), cfg.metrics));
        }
    }
    return out;
}

std::vector<SweepCheck> sweep_report(const ExperimentBResult& result)
{
    std::vector<SweepCheck> out;
    for (const Policy mode : kExperimentBModes) {
        SweepCheck check;
        check.mode = mode;
        for (const double f : result.fractions) check.medians.push_back(result.summaries.at({mode, f}).percentiles.at(50.0));
        check.non_decreasing = std::is_sorted(check.medians.begin(), check.medians.end());
        if (!check.medians.empty() && check.medians.front() > 0.0)
            check.total_change = check.medians.back() / check.medians.front() - 1.0;
        out.push_back(std::move(check));
    }
    return out;
}

}  // namespace mlosim
