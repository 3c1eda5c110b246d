#include <benchmark/benchmark.h>

#include "bek/optimizer.hpp"
#include "bek/states.hpp"
#include "bek/tensor.hpp"
#include "bek/witness.hpp"

using namespace bek;

static void BM_PartialTranspose(benchmark::State& state) {
  const Operator rho = tensor_power(werner(2.0), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(partial_transpose(rho, Party::B));
  state.SetLabel("dim " + std::to_string(rho.dim()));
}
BENCHMARK(BM_PartialTranspose)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMicrosecond);

static void BM_MinEigpair(benchmark::State& state) {
  const Operator pt = conjecture_operator(static_cast<int>(state.range(0)), 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(min_eigpair(pt));
  state.SetLabel("dim " + std::to_string(pt.dim()));
}
BENCHMARK(BM_MinEigpair)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_ActivationWitness(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(witness_value_normalized(2.0));
}
BENCHMARK(BM_ActivationWitness)->Unit(benchmark::kMicrosecond);

static void BM_SeeSawActivation(benchmark::State& state) {
  SeeSawConfig cfg;
  cfg.num_starts = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(minimize_activation(2.0, cfg).value);
}
BENCHMARK(BM_SeeSawActivation)->Arg(1)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_SeeSawTwoCopies(benchmark::State& state) {
  SeeSawConfig cfg;
  cfg.num_starts = 1;
  for (auto _ : state) benchmark::DoNotOptimize(conjecture_evidence(2, 2.0, cfg).value);
}
BENCHMARK(BM_SeeSawTwoCopies)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
