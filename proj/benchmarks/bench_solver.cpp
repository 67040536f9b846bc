#include <benchmark/benchmark.h>

#include "causal_locus/cksolver.hpp"

using namespace causal;

namespace {

void BM_BuildLightlikeCone(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0)), order = static_cast<int>(state.range(1));
  const std::string lambda = n == 2 ? "sqrt(1 + x1^2) - 1" : "sqrt(1 + x1^2 + x2^2) - 1";
  for (auto _ : state) benchmark::DoNotOptimize(build_lightlike(n, lambda, order));
}
BENCHMARK(BM_BuildLightlikeCone)->Args({2, 10})->Args({2, 16})->Args({3, 8})->Unit(benchmark::kMicrosecond);

void BM_BuildAdmissibleKobayashi(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_admissible(2, "0", "x1", "0", 0, order));
}
BENCHMARK(BM_BuildAdmissibleKobayashi)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMicrosecond);

}  // namespace
