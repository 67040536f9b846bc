#include <benchmark/benchmark.h>

#include "causal_locus/catalog.hpp"
#include "causal_locus/fermi.hpp"
#include "causal_locus/geodesic.hpp"
#include "causal_locus/hypersurface.hpp"

using namespace causal;

namespace {

void BM_PointReport(benchmark::State& state, const char* id) {
  const GraphSurface F = catalog_surface(catalog_entry(id));
  const Vec p = make_vec({0.3, -0.2});
  for (auto _ : state) benchmark::DoNotOptimize(point_report(F, p));
}
BENCHMARK_CAPTURE(BM_PointReport, F1, "F1");
BENCHMARK_CAPTURE(BM_PointReport, kobayashi, "kobayashi");
BENCHMARK_CAPTURE(BM_PointReport, perturbed, "perturbed");

void BM_GeodesicPerturbed(benchmark::State& state) {
  const MetricChart g = perturbed_metric(0.1);
  const Vec x0 = Vec::Zero(3);
  const Vec v0 = make_vec({1.0, 0.2, 0.9});
  for (auto _ : state) benchmark::DoNotOptimize(geodesic_ivp(g, x0, v0, 0.0, 1.0, 1e-3));
}
BENCHMARK(BM_GeodesicPerturbed)->Unit(benchmark::kMillisecond);

void BM_FermiChart(benchmark::State& state) {
  const MetricChart g = perturbed_metric(0.1);
  const Mat G = g.g(Vec::Zero(3));
  const Vec v = make_vec({1.0, 0.0, std::sqrt(-G(0, 0) / G(2, 2))});
  for (auto _ : state) benchmark::DoNotOptimize(build_fermi_chart(g, Vec::Zero(3), v, -0.05, 1.05, 0.5, 1e-3));
}
BENCHMARK(BM_FermiChart)->Unit(benchmark::kMillisecond);

}  // namespace
