#include "mlosim/airtime.hpp"
#include "mlosim/engine.hpp"
#include "mlosim/experiment.hpp"
#include "mlosim/rng.hpp"

#include <benchmark/benchmark.h>

using namespace mlosim;

namespace {

// Fully contending network with `n` APs and four flows per AP on each band.
void BM_SolveAllocation(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    PerBand<ContentionGraph> graphs;
    for (const Band b : kAllBands) {
        graphs[index(b)] = ContentionGraph(b, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) graphs[index(b)].add_edge(i, j);
    }
    Rng rng(1);
    std::vector<AirtimeDemand> demands;
    FlowId id = 0;
    for (std::size_t a = 0; a < n; ++a)
        for (const Band b : kAllBands) {
            AirtimeDemand d{static_cast<BssId>(a), b, {}};
            for (int k = 0; k < 4; ++k) d.per_flow[id++] = rng.uniform(0.0, 0.1);
            demands.push_back(std::move(d));
        }
    for (auto _ : state) benchmark::DoNotOptimize(solve_allocation(demands, graphs));
}
BENCHMARK(BM_SolveAllocation)->Arg(5)->Arg(11)->Arg(25);

void BM_MaximalCliques(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    Rng rng(2);
    ContentionGraph g(Band::Band24, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rng.bernoulli(0.5)) g.add_edge(i, j);
    for (auto _ : state) benchmark::DoNotOptimize(maximal_cliques(g));
}
BENCHMARK(BM_MaximalCliques)->Arg(11)->Arg(25)->Arg(40);

// One full 120 s run of the long-lasting-flow setup (N = 5) or the coexistence setup (N = 11).
void BM_EngineRun(benchmark::State& state)
{
    RunConfig cfg;
    cfg.scenario.n_bss = static_cast<int>(state.range(0));
    cfg.policy.central = Policy::MCAB;
    cfg.sim.record_congestion = false;
    const auto sc = make_scenario(cfg, 7, cfg.policy.central, cfg.policy.mlo_fraction, cfg.scenario.n_bss);
    const auto sched = build_schedule(sc, cfg.sim.horizon_s, 7, cfg.traffic);
    for (auto _ : state) benchmark::DoNotOptimize(run(sc, sched, cfg, 7));
    state.counters["events"] = static_cast<double>(2 * sched.flows.size());
}
BENCHMARK(BM_EngineRun)->Arg(5)->Arg(11)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
