// Serial reference vs OpenMP kernels for the two hot paths: ensemble
// simulation and histogram accumulation.

#include <benchmark/benchmark.h>

#include <omp.h>

#include "chemosem/engine.hpp"
#include "chemosem/metrics.hpp"

using namespace chemosem;

namespace {

SimConfig bench_config(int runs) {
    SimConfig cfg;
    cfg.runs = runs;
    cfg.master_seed = 9;
    return cfg;
}

class NullSink : public TraceSink {
public:
    void consume(const Trace& t) override { benchmark::DoNotOptimize(t.positions.data()); }
};

void BM_EnsembleSerial(benchmark::State& state) {
    const auto cfg = bench_config(static_cast<int>(state.range(0)));
    NullSink sink;
    for (auto _ : state) run_ensemble_serial(cfg, sink);
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_EnsembleParallel(benchmark::State& state) {
    const auto cfg = bench_config(static_cast<int>(state.range(0)));
    NullSink sink;
    for (auto _ : state) run_ensemble(cfg, sink, omp_get_max_threads());
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

// Histograms for every k from stored traces, one k at a time.
void BM_HistogramsSerial(benchmark::State& state) {
    const auto cfg = bench_config(static_cast<int>(state.range(0)));
    const TraceSet traces = collect_traces(cfg);
    const Lattice lattice(cfg.world.lattice_size);
    for (auto _ : state) {
        for (int k = 0; k < cfg.horizon; ++k) benchmark::DoNotOptimize(build_histogram(traces, k, lattice));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

// Same histograms, folded in by the streaming accumulator across threads.
void BM_HistogramsAccumulator(benchmark::State& state) {
    const auto cfg = bench_config(static_cast<int>(state.range(0)));
    const TraceSet traces = collect_traces(cfg);
    for (auto _ : state) {
        EnsembleAccumulator acc(cfg);
#pragma omp parallel for schedule(dynamic, 16)
        for (std::size_t e = 0; e < traces.size(); ++e) acc.consume(traces[e]);
        benchmark::DoNotOptimize(acc.alive_count(0));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_EnsembleSerial)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnsembleParallel)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HistogramsSerial)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HistogramsAccumulator)->Arg(2000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
