#include <benchmark/benchmark.h>

#include <memory>

#include "wepkit/hypothesis.hpp"
#include "wepkit/limit.hpp"
#include "wepkit/modulus.hpp"
#include "wepkit/sample_path.hpp"
#include "wepkit/verify.hpp"

using namespace wep;

namespace {

const auto kUniform = std::make_shared<const Distribution>(Distribution::uniform());
const auto kQuarter = std::make_shared<const WeightFunction>(WeightFunction::power(0.25));

void BM_Simulate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(SamplePath::simulate(kUniform, kQuarter, n, SamplingMode::fixed_n, ++seed));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Simulate)->Arg(1000)->Arg(10000);

void BM_McCovariance(benchmark::State& state) {
  const std::vector<double> grid = {0.2, 0.4, 0.6, 0.8};
  for (auto _ : state)
    benchmark::DoNotOptimize(mc_covariance(*kUniform, *kQuarter, 2000, 1000, grid, SamplingMode::fixed_n, 1));
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_McCovariance)->Unit(benchmark::kMillisecond);

void BM_Modulus(benchmark::State& state) {
  const auto f = std::make_shared<const WeightFunction>(WeightFunction::constant(1.0));
  const auto path = SamplePath::simulate(kUniform, f, static_cast<std::size_t>(state.range(0)), SamplingMode::fixed_n, 7);
  for (auto _ : state) benchmark::DoNotOptimize(modulus(path, 0.05));
}
BENCHMARK(BM_Modulus)->Arg(200)->Arg(2000)->Unit(benchmark::kMicrosecond);

void BM_BuildMatrix(benchmark::State& state) {
  std::vector<double> grid;
  for (int i = 1; i <= state.range(0); ++i) grid.push_back(static_cast<double>(i) / static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_matrix(*kUniform, *kQuarter, grid));
}
BENCHMARK(BM_BuildMatrix)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_ScanBound(benchmark::State& state) {
  const auto h = BoundFunction::power(0.25, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(scan_bound(*kUniform, *kQuarter, h, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_ScanBound)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

} // namespace
BENCHMARK_MAIN();
