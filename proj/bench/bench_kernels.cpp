// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include "carpet/bundle_map.hpp"
#include "carpet/components.hpp"
#include "carpet/geometry.hpp"
#include "carpet/regularity.hpp"

using namespace carpet;

namespace {

DigitSet g9() { return build_carpet(9, 3, {{0, 0}, {2, 0}, {0, 2}, {2, 2}}); }
DigitSet b() { return build_carpet(3, 2, {{0, 0}, {1, 0}}); }

void BM_EnumerateParallel(benchmark::State& state) {
  const auto c = g9();
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_level(c, state.range(0)));
}

void BM_EnumerateReference(benchmark::State& state) {
  const auto c = g9();
  for (auto _ : state) benchmark::DoNotOptimize(reference::enumerate_level(c, state.range(0)));
}

void BM_ComponentsSweep(benchmark::State& state) {
  const auto c = b();
  for (auto _ : state) benchmark::DoNotOptimize(components_at_level(c, state.range(0)));
}

void BM_ComponentsReference(benchmark::State& state) {
  const auto c = b();
  for (auto _ : state) benchmark::DoNotOptimize(reference::components_at_level(c, state.range(0)));
}

void BM_ExtremesWindow(benchmark::State& state) {
  const auto level = components_at_level(g9(), state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(component_level_extremes(level));
}

void BM_ExtremesReference(benchmark::State& state) {
  const auto level = components_at_level(g9(), state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(reference::component_level_extremes(level));
}

const BundleMap& b_map() {
  static const BundleMap bm = [] {
    BundleMapOptions o;
    o.p = 4;
    return build_bundle_map(b(), 3, o);
  }();
  return bm;
}

void BM_DistortionParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(distortion_at(b_map(), 3, static_cast<std::uint64_t>(state.range(0)), 1));
}

void BM_DistortionReference(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(reference::distortion_at(b_map(), 3, static_cast<std::uint64_t>(state.range(0)), 1));
}

}  // namespace

BENCHMARK(BM_EnumerateParallel)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateReference)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ComponentsSweep)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ComponentsReference)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExtremesWindow)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExtremesReference)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DistortionParallel)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DistortionReference)->Arg(10000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
