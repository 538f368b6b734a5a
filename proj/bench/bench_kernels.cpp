// Serial reference against the OpenMP path for each parallel kernel.
// The Execution argument is 0 for serial and 1 for parallel.

#include <benchmark/benchmark.h>

#include "harmvol/analytic.hpp"
#include "harmvol/quadrature.hpp"
#include "harmvol/sweep.hpp"

using namespace harmvol;

namespace {

Execution mode(const benchmark::State& state) { return state.range(1) ? Execution::parallel : Execution::serial; }

const ExactCurve& curve(int g) {
  static const ExactCurve c2(2), c3(3), c4(4);
  return g == 2 ? c2 : g == 3 ? c3 : c4;
}

void BM_BasisSweep(benchmark::State& state) {
  const ExactCurve& c = curve(static_cast<int>(state.range(0)));
  for (auto _ : state)
    for (int nu = 0; nu < c.order(); ++nu) benchmark::DoNotOptimize(basis_sweep(c, nu, mode(state)));
}

void BM_TensorSweep(benchmark::State& state) {
  const ExactCurve& c = curve(static_cast<int>(state.range(0)));
  const auto tensors = random_kh_tensors(c.basis(), 1000, 1);
  for (auto _ : state) benchmark::DoNotOptimize(tensor_sweep(c, tensors, mode(state)));
}

void BM_IntegrateAllPieces(benchmark::State& state) {
  const QuadratureOptions options;
  for (auto _ : state)
    benchmark::DoNotOptimize(integrate_all_pieces(static_cast<int>(state.range(0)), options, mode(state)));
}

}  // namespace

BENCHMARK(BM_BasisSweep)->ArgsProduct({{2, 3, 4}, {0, 1}})->ArgNames({"g", "parallel"})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TensorSweep)->ArgsProduct({{2, 3, 4}, {0, 1}})->ArgNames({"g", "parallel"})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IntegrateAllPieces)
    ->ArgsProduct({{2, 3}, {0, 1}})
    ->ArgNames({"g", "parallel"})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

BENCHMARK_MAIN();
