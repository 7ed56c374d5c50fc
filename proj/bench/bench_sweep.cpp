#include <benchmark/benchmark.h>

#include "gossip/harness.hpp"

using namespace gossip;

namespace {

ExperimentSpec spec_for(std::size_t n) {
    ExperimentSpec s;
    s.family = {Family::Cycle};
    s.sizes = {n};
    s.kind = ProcessKind::Triangulation;
    s.trials = 64;
    s.master_seed = 1;
    return s;
}

void BM_SweepSerial(benchmark::State& state) {
    const auto spec = spec_for(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(run_sweep_serial(spec));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(spec.trials));
}

void BM_SweepParallel(benchmark::State& state) {
    const auto spec = spec_for(static_cast<std::size_t>(state.range(0)));
    const unsigned jobs = default_jobs();
    for (auto _ : state) benchmark::DoNotOptimize(run_sweep(spec, jobs));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(spec.trials));
    state.counters["jobs"] = jobs;
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
