#include "fusionqa/raster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fusionqa/error.hpp"
#include "fusionqa/kernels.hpp"

namespace fusionqa {

std::string_view to_string(BandId band) {
  switch (band) {
    case BandId::R: return "R";
    case BandId::G: return "G";
    case BandId::B: return "B";
    case BandId::L: return "L";
    case BandId::PAN: return "PAN";
  }
  return "?";
}

BandId band_from_string(std::string_view text) {
  for (BandId id : {BandId::R, BandId::G, BandId::B, BandId::L, BandId::PAN}) {
    if (to_string(id) == text) return id;
  }
  throw InvalidArgument("unknown band '" + std::string(text) + "'");
}

namespace {

void check_dims(int width, int height) {
  if (width < 1 || height < 1) {
    throw InvalidArgument("band dimensions must be positive, got " + std::to_string(width) +
                          "x" + std::to_string(height));
  }
}

}  // namespace

Band::Band(int width, int height, Intensity fill) : width_(width), height_(height) {
  check_dims(width, height);
  pixels_.assign(static_cast<std::size_t>(width) * height, fill);
}

Band::Band(int width, int height, std::vector<Intensity> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  check_dims(width, height);
  if (pixels_.size() != static_cast<std::size_t>(width) * height) {
    throw DimensionError("band of " + std::to_string(width) + "x" + std::to_string(height) +
                         " needs " + std::to_string(static_cast<std::size_t>(width) * height) +
                         " pixels, got " + std::to_string(pixels_.size()));
  }
}

MultibandImage::MultibandImage(Band r, Band g, Band b, std::string label)
    : bands_{std::move(r), std::move(g), std::move(b)}, label_(std::move(label)) {
  if (!bands_[0].same_shape(bands_[1]) || !bands_[0].same_shape(bands_[2])) {
    throw DimensionError("R, G and B bands of '" + label_ + "' differ in size");
  }
}

const Band& MultibandImage::band(BandId id) const {
  switch (id) {
    case BandId::R: return bands_[0];
    case BandId::G: return bands_[1];
    case BandId::B: return bands_[2];
    default: break;
  }
  throw InvalidArgument("image '" + label_ + "' has no stored " + std::string(to_string(id)) +
                        " band");
}

MultibandImage MultibandImage::relabeled(std::string label) const {
  MultibandImage copy = *this;
  copy.label_ = std::move(label);
  return copy;
}

bool RegionSpec::fits(int width, int height) const {
  if (w < 1 || h < 1 || x0 < 0 || y0 < 0) return false;
  return static_cast<long long>(x0) + w <= width && static_cast<long long>(y0) + h <= height;
}

Intensity to_intensity(double value) {
  double rounded = std::floor(value + 0.5);
  return static_cast<Intensity>(std::clamp(rounded, 0.0, 255.0));
}

Band upsample_nearest(const Band& src, int factor) {
  if (factor < 1) {
    throw InvalidArgument("upsampling factor must be >= 1, got " + std::to_string(factor));
  }
  const long long w = static_cast<long long>(src.width()) * factor;
  const long long h = static_cast<long long>(src.height()) * factor;
  if (w > std::numeric_limits<int>::max() || h > std::numeric_limits<int>::max()) {
    throw InvalidArgument("upsampled band too large");
  }
  std::vector<Intensity> out(static_cast<std::size_t>(w * h));
  kernels::upsample_nearest(src.pixels(), src.width(), src.height(), factor, out);
  return Band(static_cast<int>(w), static_cast<int>(h), std::move(out));
}

MultibandImage upsample_nearest(const MultibandImage& src, int factor) {
  return MultibandImage(upsample_nearest(src.r(), factor), upsample_nearest(src.g(), factor),
                        upsample_nearest(src.b(), factor), src.label());
}

Band l_component(const MultibandImage& img) {
  auto r = img.r().pixels();
  auto g = img.g().pixels();
  auto b = img.b().pixels();
  std::vector<Intensity> out(r.size());
  // round-half-up of sum / 3 in integers: floor((2 * sum + 3) / 6)
  for (std::size_t i = 0; i < out.size(); ++i) {
    const int sum = r[i] + g[i] + b[i];
    out[i] = static_cast<Intensity>((2 * sum + 3) / 6);
  }
  return Band(img.width(), img.height(), std::move(out));
}

Band extract_block(const Band& band, const RegionSpec& region) {
  if (!region.fits(band.width(), band.height())) {
    throw BoundsError("region '" + region.name + "' (" + std::to_string(region.x0) + "," +
                      std::to_string(region.y0) + " " + std::to_string(region.w) + "x" +
                      std::to_string(region.h) + ") is outside the " +
                      std::to_string(band.width()) + "x" + std::to_string(band.height()) +
                      " image");
  }
  std::vector<Intensity> out;
  out.reserve(static_cast<std::size_t>(region.w) * region.h);
  for (int y = region.y0; y < region.y0 + region.h; ++y) {
    auto row = band.row(y).subspan(region.x0, region.w);
    out.insert(out.end(), row.begin(), row.end());
  }
  return Band(region.w, region.h, std::move(out));
}

IntensityCounts count_intensities(std::span<const Intensity> pixels) {
  return kernels::histogram(pixels);
}

IntensityCounts count_intensities(std::span<const Intensity> pixels,
                                  std::span<const std::uint8_t> mask, std::uint8_t select) {
  if (mask.size() != pixels.size()) {
    throw DimensionError("mask has " + std::to_string(mask.size()) + " labels for " +
                         std::to_string(pixels.size()) + " pixels");
  }
  return kernels::masked_histogram(pixels, mask, select);
}

PixelStats pixel_stats(const IntensityCounts& counts) {
  PixelStats stats;
  std::uint64_t weighted = 0;
  int lo = -1;
  int hi = -1;
  for (int v = 0; v < 256; ++v) {
    if (counts[v] == 0) continue;
    if (lo < 0) lo = v;
    hi = v;
    stats.n += counts[v];
    weighted += counts[v] * static_cast<std::uint64_t>(v);
  }
  if (stats.n == 0) throw EmptyRegionError("pixel statistics of an empty region");

  stats.mean = static_cast<double>(weighted) / static_cast<double>(stats.n);
  double squared = 0.0;
  for (int v = lo; v <= hi; ++v) {
    if (counts[v] == 0) continue;
    const double d = v - stats.mean;
    squared += static_cast<double>(counts[v]) * d * d;
  }
  stats.std_dev = std::sqrt(squared / static_cast<double>(stats.n));
  stats.min = static_cast<Intensity>(lo);
  stats.max = static_cast<Intensity>(hi);
  return stats;
}

PixelStats pixel_stats(std::span<const Intensity> pixels) {
  if (pixels.empty()) throw EmptyRegionError("pixel statistics of an empty region");
  return pixel_stats(count_intensities(pixels));
}

}  // namespace fusionqa
