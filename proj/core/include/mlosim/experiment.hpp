#pragma once

#include "mlosim/config.hpp"
#include "mlosim/engine.hpp"
#include "mlosim/metrics.hpp"
#include "mlosim/scenario.hpp"
#include "mlosim/traffic.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

namespace mlosim {

/// Scenario with policies assigned, for the given central policy, MLO fraction and BSS count.
Scenario make_scenario(const RunConfig& config, std::uint64_t seed, Policy central, double mlo_fraction, int n_bss);

struct SingleRun {
    Scenario scenario;
    FlowSchedule schedule;
    SimResult result;
};

/// One simulation as configured (scenario.n_bss, policy.central, policy.mlo_fraction).
SingleRun run_single(const RunConfig& config, std::uint64_t seed);

/// Runs fn(i) for i in [0, n) on `workers` threads. Results must be written to
/// per-index slots; exceptions are rethrown on the calling thread.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

inline constexpr std::array<Policy, 3> kExperimentAPolicies{Policy::SLCI, Policy::MCAA, Policy::MCAB};
inline constexpr std::array<Policy, 4> kExperimentBModes{Policy::SLCI, Policy::MCAA, Policy::MCAB, Policy::LegacySingle};

struct ExperimentARow {
    std::size_t scenario = 0;
    std::uint64_t seed = 0;
    Policy policy = Policy::MCAB;
    double s_bar = 0.0;
    std::uint64_t schedule_hash = 0;
};

struct ExperimentAResult {
    std::vector<ExperimentARow> rows;
    std::map<Policy, BatchSummary> summaries;
};

/// Long-lasting flows: every scenario is run once per central policy with identical
/// geometry, neighbor policies and traffic (paired seeds).
ExperimentAResult experiment_a(const RunConfig& config, int ns, std::uint64_t base_seed, int workers = 1);

struct ExperimentBRow {
    std::size_t scenario = 0;
    std::uint64_t seed = 0;
    Policy mode = Policy::MCAB;
    double fraction = 0.0;
    double s_bar = 0.0;
};

struct ExperimentBResult {
    std::vector<double> fractions;
    std::vector<ExperimentBRow> rows;
    std::map<std::pair<Policy, double>, BatchSummary> summaries;
};

/// Coexistence sweep over MLO fractions of the neighbors, for each central mode.
ExperimentBResult experiment_b(const RunConfig& config, const std::vector<double>& fractions, int ns,
                               std::uint64_t base_seed, int workers = 1);

struct SweepCheck {
    Policy mode = Policy::MCAB;
    std::vector<double> medians;
    bool non_decreasing = false;
    double total_change = 0.0;
};

/// Median s_bar per fraction for each mode, and whether it never drops as the MLO share grows.
std::vector<SweepCheck> sweep_report(const ExperimentBResult& result);

}  // namespace mlosim
