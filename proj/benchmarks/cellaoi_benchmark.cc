#include <benchmark/benchmark.h>

#include <cmath>

#include "cellaoi/analytics.hpp"
#include "cellaoi/jm_cell.hpp"
#include "cellaoi/numerics/special.hpp"
#include "cellaoi/sim/network.hpp"
#include "cellaoi/sim/slots.hpp"

namespace {

using cellaoi::NetworkParams;

void BM_SeriesC(benchmark::State& state) {
  const double b = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cellaoi::numerics::series_C(b, 0.28, 0.5, 2.0));
}
BENCHMARK(BM_SeriesC)->Arg(2)->Arg(-1)->Arg(-2);

void BM_FitAreaModel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cellaoi::fit_area_model(1e-4, 40.0));
}
BENCHMARK(BM_FitAreaModel)->Unit(benchmark::kMillisecond);

// Moment of the update-link success probability; arg = 10 * epsilon.
void BM_ConditionalMoment(benchmark::State& state) {
  NetworkParams p;
  p.epsilon = static_cast<double>(state.range(0)) / 10.0;
  const auto stats = cellaoi::cell_statistics(p);
  for (auto _ : state) benchmark::DoNotOptimize(cellaoi::conditional_success_moment(1.0, p, stats));
}
BENCHMARK(BM_ConditionalMoment)->Arg(0)->Arg(3)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_SampleNetwork(benchmark::State& state) {
  const NetworkParams p;
  const double side = 16.0 / std::sqrt(p.lambda_b);
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(cellaoi::sim::sample_network(p, side, seed++));
}
BENCHMARK(BM_SampleNetwork)->Unit(benchmark::kMillisecond);

// Per-slot cost with the D2D link evaluated in every slot.
void BM_RunSlots(benchmark::State& state) {
  const NetworkParams p;
  const auto r = cellaoi::sim::sample_network(p, 16.0 / std::sqrt(p.lambda_b), 3);
  const int n = static_cast<int>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(cellaoi::sim::run_slots(r, p, n, seed++));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_RunSlots)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
