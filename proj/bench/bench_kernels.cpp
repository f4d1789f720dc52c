// OpenMP kernels against their serial references.

#include <benchmark/benchmark.h>

#include "fulldp/classify.hpp"
#include "fulldp/cover.hpp"
#include "fulldp/kuwata.hpp"
#include "fulldp/reference.hpp"

using namespace fulldp;

namespace {

quartic::TernaryQuartic kuwata_curve(const char* text) {
  const auto [field, k] = kuwata::parse(text);
  return kuwata::kuwata_quartic(field, k).canonical();
}

const char* curve_for(std::int64_t q) {
  switch (q) {
    case 13: return "13;2;2;2";
    case 23: return "23;2;2;2";
    default: return "37;2;3;4";
  }
}

void BM_SurfacePoints(benchmark::State& state) {
  const auto Q = kuwata_curve(curve_for(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cover::count_surface_points(Q));
}

void BM_SurfacePointsReference(benchmark::State& state) {
  const auto Q = kuwata_curve(curve_for(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reference::count_surface_points(Q));
}

void BM_ScanBitangents(benchmark::State& state) {
  const auto Q = kuwata_curve(curve_for(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(quartic::scan_bitangents(Q));
}

void BM_ScanBitangentsReference(benchmark::State& state) {
  const auto Q = kuwata_curve(curve_for(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reference::scan_bitangents(Q));
}

// A curve and a fixed projective image of it.
std::pair<classify::Frame, classify::Frame> frame_pair(std::int64_t q) {
  const auto Q = kuwata_curve(curve_for(q));
  const auto& F = Q.field();
  const auto M = classify::ProjTransform::from_matrix(
      F, {F.one(), F.from_int(2), F.zero(), F.zero(), F.one(), F.from_int(3), F.from_int(5), F.zero(), F.one()});
  return {classify::frame_of(config::audit(Q)), classify::frame_of(config::audit(classify::apply_transform(M, Q)))};
}

void BM_FrameSearch(benchmark::State& state) {
  const auto [a, b] = frame_pair(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(classify::equivalent(a, b));
}

void BM_FrameSearchReference(benchmark::State& state) {
  const auto [a, b] = frame_pair(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(reference::equivalent_serial(a, b));
}

}  // namespace

BENCHMARK(BM_SurfacePoints)->Arg(13)->Arg(37)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SurfacePointsReference)->Arg(13)->Arg(37)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ScanBitangents)->Arg(13)->Arg(37)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ScanBitangentsReference)->Arg(13)->Arg(37)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_FrameSearch)->Arg(13)->Arg(23)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_FrameSearchReference)->Arg(13)->Arg(23)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
