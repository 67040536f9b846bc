#include <benchmark/benchmark.h>

#include "causal_locus/expr.hpp"
#include "causal_locus/jet.hpp"

using namespace causal;

namespace {

Jet sample(int nvars, int order, double seed) {
  Jet a = Jet::constant(1.0, nvars, order);
  for (int i = 0; i < nvars; ++i) a = a + Jet::variable(i, seed * (i + 1), nvars, order) * (0.3 + 0.1 * i);
  return sin(a) * a;
}

void BM_JetMultiply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0)), order = static_cast<int>(state.range(1));
  const Jet a = sample(n, order, 0.1), b = sample(n, order, 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
  state.counters["coeffs"] = static_cast<double>(a.size());
}
BENCHMARK(BM_JetMultiply)->Args({2, 4})->Args({2, 12})->Args({3, 4})->Args({3, 10});

void BM_JetSqrt(benchmark::State& state) {
  const Jet a = sample(2, static_cast<int>(state.range(0)), 0.1) + 2.0;
  for (auto _ : state) benchmark::DoNotOptimize(sqrt(a));
}
BENCHMARK(BM_JetSqrt)->Arg(4)->Arg(12);

void BM_ExprEvalJet(benchmark::State& state) {
  const Expr e = parse("y + x^2 + x^3 + y*x^4", VarTable::domain(2));
  const int order = static_cast<int>(state.range(0));
  const std::vector<Jet> x{Jet::variable(0, 0.3, 2, order), Jet::variable(1, -0.2, 2, order)};
  for (auto _ : state) benchmark::DoNotOptimize(e.eval(x));
}
BENCHMARK(BM_ExprEvalJet)->Arg(2)->Arg(4);

}  // namespace
