#include "fusionqa/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "fusionqa/error.hpp"

namespace fusionqa::kernels {

namespace {

// Rows below this many pixels are not worth a parallel region.
constexpr std::int64_t kParallelThreshold = 1 << 14;

bool go_parallel(std::size_t work) { return static_cast<std::int64_t>(work) >= kParallelThreshold; }

}  // namespace

int worker_count() {
  int cap = omp_get_max_threads();
  if (const char* env = std::getenv("FUSIONQA_THREADS")) {
    char* end = nullptr;
    long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) cap = static_cast<int>(std::min<long>(value, cap));
  }
  return std::max(cap, 1);
}

void apply_worker_cap() { omp_set_num_threads(worker_count()); }

void sobel_magnitude(std::span<const Intensity> src, int width, int height,
                     std::span<double> out) {
  if (src.size() != out.size() || src.size() != static_cast<std::size_t>(width) * height) {
    throw DimensionError("sobel: buffer size mismatch");
  }
  const Intensity* p = src.data();
  double* dst = out.data();

#pragma omp parallel for schedule(static) if (go_parallel(src.size()))
  for (int y = 0; y < height; ++y) {
    const Intensity* up = p + static_cast<std::size_t>(std::max(y - 1, 0)) * width;
    const Intensity* mid = p + static_cast<std::size_t>(y) * width;
    const Intensity* down = p + static_cast<std::size_t>(std::min(y + 1, height - 1)) * width;
    double* row_out = dst + static_cast<std::size_t>(y) * width;
    for (int x = 0; x < width; ++x) {
      const int xl = std::max(x - 1, 0);
      const int xr = std::min(x + 1, width - 1);
      const int gx = (up[xr] + 2 * mid[xr] + down[xr]) - (up[xl] + 2 * mid[xl] + down[xl]);
      const int gy = (down[xl] + 2 * down[x] + down[xr]) - (up[xl] + 2 * up[x] + up[xr]);
      row_out[x] = std::sqrt(static_cast<double>(gx * gx + gy * gy));
    }
  }
}

std::uint64_t threshold_labels(std::span<const double> magnitude, double threshold,
                               std::span<std::uint8_t> labels) {
  if (magnitude.size() != labels.size()) throw DimensionError("threshold: buffer size mismatch");
  const auto n = static_cast<std::int64_t>(magnitude.size());
  std::uint64_t count = 0;

#pragma omp parallel for schedule(static) reduction(+ : count) if (go_parallel(magnitude.size()))
  for (std::int64_t i = 0; i < n; ++i) {
    const bool edge = magnitude[i] > threshold;
    labels[i] = edge ? 1 : 0;
    count += edge ? 1 : 0;
  }
  return count;
}

namespace {

template <typename Select>
IntensityCounts parallel_histogram(std::span<const Intensity> pixels, Select&& select) {
  IntensityCounts total{};
  const auto n = static_cast<std::int64_t>(pixels.size());

#pragma omp parallel if (go_parallel(pixels.size()))
  {
    IntensityCounts local{};
#pragma omp for schedule(static) nowait
    for (std::int64_t i = 0; i < n; ++i) {
      if (select(i)) ++local[pixels[i]];
    }
#pragma omp critical(fusionqa_histogram_merge)
    for (int v = 0; v < 256; ++v) total[v] += local[v];
  }
  return total;
}

}  // namespace

IntensityCounts histogram(std::span<const Intensity> pixels) {
  return parallel_histogram(pixels, [](std::int64_t) { return true; });
}

IntensityCounts masked_histogram(std::span<const Intensity> pixels,
                                 std::span<const std::uint8_t> mask, std::uint8_t select) {
  if (mask.size() != pixels.size()) throw DimensionError("histogram: mask size mismatch");
  return parallel_histogram(pixels, [&](std::int64_t i) { return mask[i] == select; });
}

std::uint64_t sum_of_squares(std::span<const Intensity> values) {
  const auto n = static_cast<std::int64_t>(values.size());
  std::uint64_t sum = 0;
#pragma omp parallel for schedule(static) reduction(+ : sum) if (go_parallel(values.size()))
  for (std::int64_t i = 0; i < n; ++i) {
    const std::uint64_t v = values[i];
    sum += v * v;
  }
  return sum;
}

std::uint64_t sum_of_squared_differences(std::span<const Intensity> a,
                                         std::span<const Intensity> b) {
  if (a.size() != b.size()) throw DimensionError("sum of squared differences: size mismatch");
  const auto n = static_cast<std::int64_t>(a.size());
  std::uint64_t sum = 0;
#pragma omp parallel for schedule(static) reduction(+ : sum) if (go_parallel(a.size()))
  for (std::int64_t i = 0; i < n; ++i) {
    const std::int64_t d = static_cast<std::int64_t>(a[i]) - b[i];
    sum += static_cast<std::uint64_t>(d * d);
  }
  return sum;
}

void upsample_nearest(std::span<const Intensity> src, int width, int height, int factor,
                      std::span<Intensity> out) {
  const std::size_t out_w = static_cast<std::size_t>(width) * factor;
  const int out_h = height * factor;
  if (out.size() != out_w * out_h) throw DimensionError("upsample: output size mismatch");

  // Expand each source row once, then copy it down factor - 1 times.
#pragma omp parallel for schedule(static) if (go_parallel(out.size()))
  for (int sy = 0; sy < height; ++sy) {
    const Intensity* in_row = src.data() + static_cast<std::size_t>(sy) * width;
    Intensity* first = out.data() + static_cast<std::size_t>(sy) * factor * out_w;
    Intensity* o = first;
    for (int x = 0; x < width; ++x, o += factor) std::fill_n(o, factor, in_row[x]);
    for (int k = 1; k < factor; ++k) std::copy_n(first, out_w, first + k * out_w);
  }
}

void box_blur(std::span<const Intensity> src, int width, int height, int radius,
              std::span<Intensity> out) {
  if (radius < 0) throw InvalidArgument("box blur radius must be >= 0");
  if (src.size() != out.size() || src.size() != static_cast<std::size_t>(width) * height) {
    throw DimensionError("box blur: buffer size mismatch");
  }
  if (radius == 0) {
    std::copy(src.begin(), src.end(), out.begin());
    return;
  }
  // Separable sums kept as integers so the final division is the only
  // rounding step.
  const int span = 2 * radius + 1;
  std::vector<std::uint32_t> horizontal(src.size());

#pragma omp parallel for schedule(static) if (go_parallel(src.size()))
  for (int y = 0; y < height; ++y) {
    const Intensity* row = src.data() + static_cast<std::size_t>(y) * width;
    std::uint32_t* acc = horizontal.data() + static_cast<std::size_t>(y) * width;
    for (int x = 0; x < width; ++x) {
      std::uint32_t s = 0;
      for (int k = -radius; k <= radius; ++k) s += row[std::clamp(x + k, 0, width - 1)];
      acc[x] = s;
    }
  }

  const std::uint32_t area = static_cast<std::uint32_t>(span) * span;
#pragma omp parallel for schedule(static) if (go_parallel(src.size()))
  for (int y = 0; y < height; ++y) {
    Intensity* row_out = out.data() + static_cast<std::size_t>(y) * width;
    for (int x = 0; x < width; ++x) {
      std::uint32_t s = 0;
      for (int k = -radius; k <= radius; ++k) {
        s += horizontal[static_cast<std::size_t>(std::clamp(y + k, 0, height - 1)) * width + x];
      }
      row_out[x] = static_cast<Intensity>((2 * s + area) / (2 * area));
    }
  }
}

}  // namespace fusionqa::kernels
