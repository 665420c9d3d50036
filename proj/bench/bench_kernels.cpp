#include <benchmark/benchmark.h>

#include "sine_moments/arithmetic.hpp"
#include "sine_moments/cue.hpp"
#include "sine_moments/moments.hpp"
#include "sine_moments/parallel.hpp"

using namespace sine_moments;

// Each kernel runs twice: range(0) == 0 is the serial reference, 1 the OpenMP path.

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void BM_MomentPanels(benchmark::State& state) {
  QuadraturePolicy policy;
  policy.exec = mode(state);
  const ShiftConfig cfg{{0.5}, {0.0}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(shifted_moment(cfg, kDefaultT0, 2e4, Window::from_T0, policy, 1.0));
  }
}
BENCHMARK(BM_MomentPanels)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_CueMc(benchmark::State& state) {
  const ShiftConfig cfg{{0.3, -0.6}, {0.1, 0.8}};
  for (auto _ : state) benchmark::DoNotOptimize(cue_mc(20, cfg, 2000, 1, mode(state)));
}
BENCHMARK(BM_CueMc)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_OffdiagSum(benchmark::State& state) {
  static const DivisorTable table = divisor_sieve(kOffdiagMaxT);
  for (auto _ : state) benchmark::DoNotOptimize(offdiag_sum(kOffdiagMaxT, true, table, mode(state)));
}
BENCHMARK(BM_OffdiagSum)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_EulerProduct(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(a_m(3, 1'000'000, 0, mode(state)));
}
BENCHMARK(BM_EulerProduct)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
