#include <benchmark/benchmark.h>

#include "rggham/aux_graphs.hpp"
#include "rggham/hamiltonian.hpp"
#include "rggham/pipeline.hpp"
#include "rggham/rgg_instance.hpp"

namespace {

using namespace rggham;

const LpExponent kTwo(2.0);

// Radius at which cells reach the dense threshold, so the whole pipeline runs.
constexpr double kDenseRadius = 0.25;

VertexSet dense_points(std::size_t n) { return sample_points({n, kTwo, radius::Explicit{kDenseRadius}, 1}); }

void BM_LpDistance(benchmark::State& state) {
  const LpExponent p(static_cast<double>(state.range(0)) / 2.0);
  const VertexSet vs = sample_points({1024, p, radius::Explicit{0.1}, 2});
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lp_distance(p, vs[i & 1023], vs[(i + 1) & 1023]));
    ++i;
  }
}
BENCHMARK(BM_LpDistance)->Arg(2)->Arg(3)->Arg(4);

void BM_IsConnectedAtThreshold(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const double r = 1.5 * threshold_radius(n, kTwo);
  const VertexSet vs = sample_points({n, kTwo, radius::Explicit{r}, 3});
  for (auto _ : state) benchmark::DoNotOptimize(is_connected(vs, r, kTwo));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_IsConnectedAtThreshold)->RangeMultiplier(2)->Range(1 << 14, 1 << 18)->Complexity(benchmark::oN);

void BM_ClassifyCells(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const double r = 2.0 * threshold_radius(n, kTwo);
  const VertexSet vs = sample_points({n, kTwo, radius::Explicit{r}, 4});
  const Tessellation t(r, kTwo, kMinCellsPerSide);
  for (auto _ : state) benchmark::DoNotOptimize(classify_cells(t, vs));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ClassifyCells)->RangeMultiplier(2)->Range(1 << 14, 1 << 19)->Complexity(benchmark::oN);

void BM_BuildGPrime(benchmark::State& state) {
  const VertexSet vs = dense_points(static_cast<std::size_t>(state.range(0)));
  const Tessellation t(kDenseRadius, kTwo, derive_k(vs.size(), kDenseRadius, kTwo));
  const CellClassification cls = classify_cells(t, vs);
  for (auto _ : state) benchmark::DoNotOptimize(build_g_prime(t, cls));
}
BENCHMARK(BM_BuildGPrime)->Arg(120'000);

void BM_Solve(benchmark::State& state) {
  const VertexSet vs = dense_points(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve(vs, kDenseRadius, kTwo));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Solve)->Arg(120'000)->Arg(240'000)->Arg(480'000)->Unit(benchmark::kMillisecond)->Complexity(benchmark::oN);

void BM_VerifyCycle(benchmark::State& state) {
  const VertexSet vs = dense_points(static_cast<std::size_t>(state.range(0)));
  const SolveResult res = solve(vs, kDenseRadius, kTwo);
  if (!res.cycle) {
    state.SkipWithError("no cycle to verify");
    return;
  }
  for (auto _ : state) benchmark::DoNotOptimize(verify_cycle(vs, kDenseRadius, kTwo, res.cycle->order));
}
BENCHMARK(BM_VerifyCycle)->Arg(120'000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
