// OpenMP kernels against their serial references on a 600x525 band.
// Set FUSIONQA_THREADS to cap the parallel runs.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "fusionqa/kernels.hpp"
#include "fusionqa/reference.hpp"

namespace {

using fusionqa::Band;
using fusionqa::Intensity;

constexpr int kWidth = 600;
constexpr int kHeight = 525;

const Band& scene() {
  static const Band band = [] {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<int> dist(0, 255);
    std::vector<Intensity> px(static_cast<std::size_t>(kWidth) * kHeight);
    for (auto& v : px) v = static_cast<Intensity>(dist(rng));
    return Band(kWidth, kHeight, std::move(px));
  }();
  return band;
}

void BM_SobelParallel(benchmark::State& state) {
  fusionqa::kernels::apply_worker_cap();
  std::vector<double> out(scene().size());
  for (auto _ : state) {
    fusionqa::kernels::sobel_magnitude(scene().pixels(), kWidth, kHeight, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_SobelParallel)->Unit(benchmark::kMicrosecond);

void BM_SobelReference(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(fusionqa::reference::sobel_magnitude(scene()));
}
BENCHMARK(BM_SobelReference)->Unit(benchmark::kMicrosecond);

void BM_HistogramParallel(benchmark::State& state) {
  fusionqa::kernels::apply_worker_cap();
  for (auto _ : state) benchmark::DoNotOptimize(fusionqa::kernels::histogram(scene().pixels()));
}
BENCHMARK(BM_HistogramParallel)->Unit(benchmark::kMicrosecond);

void BM_HistogramReference(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(fusionqa::reference::histogram(scene()));
}
BENCHMARK(BM_HistogramReference)->Unit(benchmark::kMicrosecond);

void BM_BoxBlurParallel(benchmark::State& state) {
  fusionqa::kernels::apply_worker_cap();
  const int radius = static_cast<int>(state.range(0));
  std::vector<Intensity> out(scene().size());
  for (auto _ : state) {
    fusionqa::kernels::box_blur(scene().pixels(), kWidth, kHeight, radius, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_BoxBlurParallel)->Arg(2)->Arg(8)->Unit(benchmark::kMicrosecond);

void BM_BoxBlurReference(benchmark::State& state) {
  const int radius = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fusionqa::reference::box_blur(scene(), radius));
}
BENCHMARK(BM_BoxBlurReference)->Arg(2)->Arg(8)->Unit(benchmark::kMicrosecond);

void BM_UpsampleParallel(benchmark::State& state) {
  const Band low(120, 105, 7);
  std::vector<Intensity> out(static_cast<std::size_t>(kWidth) * kHeight);
  fusionqa::kernels::apply_worker_cap();
  for (auto _ : state) {
    fusionqa::kernels::upsample_nearest(low.pixels(), 120, 105, 5, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_UpsampleParallel)->Unit(benchmark::kMicrosecond);

void BM_UpsampleReference(benchmark::State& state) {
  const Band low(120, 105, 7);
  for (auto _ : state) benchmark::DoNotOptimize(fusionqa::reference::upsample_nearest(low, 5));
}
BENCHMARK(BM_UpsampleReference)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
