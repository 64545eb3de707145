#include "wks/limiting_cdf.hpp"
#include "wks/statistic.hpp"
#include "wks/validation.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_EstimateCdf(benchmark::State& state, wks::Execution exec) {
    const auto g = wks::AnalyticWeight::make(wks::WeightKind::gk_family, 1);
    const wks::SimConfig cfg{static_cast<std::size_t>(state.range(0)),
                             static_cast<std::size_t>(state.range(1)), 1};
    for (auto _ : state) benchmark::DoNotOptimize(wks::estimate_cdf(g, cfg, exec));
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(1));
}

void BM_EstimateSerial(benchmark::State& s) { BM_EstimateCdf(s, wks::Execution::serial); }
void BM_EstimateParallel(benchmark::State& s) { BM_EstimateCdf(s, wks::Execution::parallel); }

BENCHMARK(BM_EstimateSerial)->Args({15000, 200})->Args({18638, 200})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EstimateParallel)->Args({15000, 200})->Args({18638, 200})->Unit(benchmark::kMillisecond);

void BM_GseaPvalue(benchmark::State& state) {
    const auto p = wks::rank_profile(18638);
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(wks::gsea_pvalue(n, p, 0.2, 1000, 1));
    state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_GseaPvalue)->Arg(20)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_NullSample(benchmark::State& state) {
    const auto p = wks::rank_profile(18638);
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(wks::null_statistic_sample(p, n, 1500, wks::Sampling::iid_uniform, 1));
}
BENCHMARK(BM_NullSample)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
