#include "fusionqa/reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fusionqa/error.hpp"

namespace fusionqa::reference {

namespace {

int clamp_index(int i, int n) { return i < 0 ? 0 : (i >= n ? n - 1 : i); }

}  // namespace

std::vector<double> sobel_magnitude(const Band& band) {
  static constexpr int kx[3][3] = {{-1, 0, 1}, {-2, 0, 2}, {-1, 0, 1}};
  static constexpr int ky[3][3] = {{-1, -2, -1}, {0, 0, 0}, {1, 2, 1}};
  const int w = band.width();
  const int h = band.height();
  std::vector<double> out(band.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double gx = 0.0;
      double gy = 0.0;
      for (int j = -1; j <= 1; ++j) {
        for (int i = -1; i <= 1; ++i) {
          const double v = band.at(clamp_index(x + i, w), clamp_index(y + j, h));
          gx += kx[j + 1][i + 1] * v;
          gy += ky[j + 1][i + 1] * v;
        }
      }
      out[static_cast<std::size_t>(y) * w + x] = std::sqrt(gx * gx + gy * gy);
    }
  }
  return out;
}

PixelStats pixel_stats(std::span<const Intensity> pixels) {
  if (pixels.empty()) throw EmptyRegionError("empty population");
  PixelStats s;
  s.n = pixels.size();
  double sum = 0.0;
  s.min = 255;
  s.max = 0;
  for (Intensity v : pixels) {
    sum += v;
    s.min = std::min(s.min, v);
    s.max = std::max(s.max, v);
  }
  s.mean = sum / static_cast<double>(s.n);
  double sq = 0.0;
  for (Intensity v : pixels) sq += (v - s.mean) * (v - s.mean);
  s.std_dev = std::sqrt(sq / static_cast<double>(s.n));
  return s;
}

double snr_whole(const Band& fused, const Band& reference) {
  if (!fused.same_shape(reference)) throw DimensionError("snr_whole: shape mismatch");
  double signal = 0.0;
  double noise = 0.0;
  for (int y = 0; y < fused.height(); ++y) {
    for (int x = 0; x < fused.width(); ++x) {
      const double f = fused.at(x, y);
      const double m = reference.at(x, y);
      signal += f * f;
      noise += (f - m) * (f - m);
    }
  }
  if (noise == 0.0) return std::numeric_limits<double>::infinity();
  return std::sqrt(signal / noise);
}

IntensityCounts histogram(const Band& band) {
  IntensityCounts c{};
  for (int y = 0; y < band.height(); ++y)
    for (int x = 0; x < band.width(); ++x) ++c[band.at(x, y)];
  return c;
}

IntensityCounts masked_histogram(const Band& band, std::span<const std::uint8_t> labels) {
  IntensityCounts c{};
  for (int y = 0; y < band.height(); ++y)
    for (int x = 0; x < band.width(); ++x)
      if (labels[static_cast<std::size_t>(y) * band.width() + x]) ++c[band.at(x, y)];
  return c;
}

Band upsample_nearest(const Band& src, int factor) {
  const int w = src.width() * factor;
  const int h = src.height() * factor;
  std::vector<Intensity> out(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      out[static_cast<std::size_t>(y) * w + x] = src.at(x / factor, y / factor);
  return Band(w, h, std::move(out));
}

Band box_blur(const Band& src, int radius) {
  const int w = src.width();
  const int h = src.height();
  const double area = (2.0 * radius + 1) * (2.0 * radius + 1);
  std::vector<Intensity> out(src.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double s = 0.0;
      for (int j = -radius; j <= radius; ++j)
        for (int i = -radius; i <= radius; ++i) s += src.at(clamp_index(x + i, w), clamp_index(y + j, h));
      out[static_cast<std::size_t>(y) * w + x] = static_cast<Intensity>(std::floor(s / area + 0.5));
    }
  }
  return Band(w, h, std::move(out));
}

}  // namespace fusionqa::reference
