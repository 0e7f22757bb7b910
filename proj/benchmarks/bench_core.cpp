#include <benchmark/benchmark.h>

#include "torcap/capacity.hpp"
#include "torcap/kernels.hpp"
#include "torcap/series.hpp"
#include "torcap/setspec.hpp"

#include <numbers>

using namespace torcap;

namespace {

constexpr double kPi = std::numbers::pi;

void BM_ApplyH_1D(benchmark::State& state) {
  const std::size_t m = std::size_t(state.range(0));
  TorusGrid g(1, m);
  GridMeasure mu(g, std::vector<double>(m, 1.0 / double(m)));
  for (auto _ : state) benchmark::DoNotOptimize(apply_H(mu));
}
BENCHMARK(BM_ApplyH_1D)->Arg(512)->Arg(4096)->Arg(65536);

void BM_ApplyH_2D(benchmark::State& state) {
  const std::size_t m = std::size_t(state.range(0));
  TorusGrid g(2, m);
  GridMeasure mu(g, std::vector<double>(g.total_points(), 1.0 / double(g.total_points())));
  for (auto _ : state) benchmark::DoNotOptimize(apply_H(mu));
}
BENCHMARK(BM_ApplyH_2D)->Arg(128)->Arg(256);

void BM_EquilibriumArc(benchmark::State& state) {
  const std::size_t m = std::size_t(state.range(0));
  GridSet arc(TorusGrid(1, m), arc_mask_1d(m, 0.0, kPi));
  for (auto _ : state) benchmark::DoNotOptimize(equilibrium(arc));
}
BENCHMARK(BM_EquilibriumArc)->Arg(256)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);

void BM_SampleH(benchmark::State& state) {
  const std::size_t m = std::size_t(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_h(m));
}
BENCHMARK(BM_SampleH)->Arg(1024)->Arg(16384);

void BM_PringsheimScan(benchmark::State& state) {
  const std::size_t s = std::size_t(state.range(0));
  CoeffArray f(2, {s, s}, 1);
  for (std::size_t i = 0; i < f.values.size(); ++i)
    f.values[i] = cplx(1.0 / double(i + 1), 0.0);
  const std::vector<double> th{0.7, 1.9};
  const std::vector<std::size_t> nm{s - 1, s - 1};
  for (auto _ : state) benchmark::DoNotOptimize(pringsheim_scan(f, th, nm, 1e-6));
}
BENCHMARK(BM_PringsheimScan)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_FejerGap(benchmark::State& state) {
  const std::size_t s = std::size_t(state.range(0));
  CoeffArray f(1, {s}, 1);
  for (std::size_t k = 0; k < s; ++k)
    f.values[k] = cplx(std::pow(double(k + 1), -1.6), 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(fejer_gap(f, s / 2, 0.7, 0));
}
BENCHMARK(BM_FejerGap)->Arg(16384);

} // namespace

BENCHMARK_MAIN();
