// Microbenchmarks for the evaluation paths the searches lean on: closed
// forms, the brute-force density-matrix pipeline, the reduced Schmidt
// pipeline, and a full threshold bisection.

#include <benchmark/benchmark.h>

#include "cglmp/bell.hpp"
#include "cglmp/filtering.hpp"
#include "cglmp/measurements.hpp"
#include "cglmp/search.hpp"
#include "cglmp/states.hpp"

namespace {

using namespace cglmp;

void BM_ClosedFormOptimal(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bell::cglmp_closed_form_optimal(d));
}
BENCHMARK(BM_ClosedFormOptimal)->Arg(8)->Arg(100);

void BM_FilteredClosedForm(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(filtering::filtered_cglmp_closed_form(d, 0.7, 0.5));
}
BENCHMARK(BM_FilteredClosedForm)->Arg(8)->Arg(100);

void BM_OracleTable(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto filtered = filtering::apply_filters(states::mixed_state(d, 0.7),
                                                 filtering::FilterPair::coupled(d, 0.5, 0.7));
  for (auto _ : state)
    benchmark::DoNotOptimize(measurements::joint_probability_table(filtered.rho_f));
}
BENCHMARK(BM_OracleTable)->Arg(4)->Arg(8)->Arg(16);

void BM_SchmidtPipeline(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const states::SchmidtCoefficients coeffs = states::SchmidtCoefficients::uniform(d);
  for (auto _ : state)
    benchmark::DoNotOptimize(filtering::filtered_schmidt_cglmp(coeffs, 0.7, 0.5));
}
BENCHMARK(BM_SchmidtPipeline)->Arg(5)->Arg(10);

void BM_ThresholdBisection(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        search::q_threshold(d, 0.6, search::StateKind::MaxEntangled, true, 1e-4));
}
BENCHMARK(BM_ThresholdBisection)->Arg(5)->Arg(100);

void BM_GammaOptimization(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(search::optimize_gammas(d));
}
BENCHMARK(BM_GammaOptimization)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
