#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fusionqa {

using Intensity = std::uint8_t;

// Which band of which image a value belongs to.
enum class BandId { R, G, B, L, PAN };

std::string_view to_string(BandId band);
BandId band_from_string(std::string_view text);

// A width x height grid of 8-bit intensities, row-major. Immutable after
// construction.
class Band {
 public:
  Band(int width, int height, Intensity fill = 0);
  Band(int width, int height, std::vector<Intensity> pixels);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return pixels_.size(); }

  Intensity at(int x, int y) const { return pixels_[static_cast<std::size_t>(y) * width_ + x]; }
  std::span<const Intensity> pixels() const { return pixels_; }
  std::span<const Intensity> row(int y) const {
    return std::span<const Intensity>(pixels_).subspan(static_cast<std::size_t>(y) * width_, width_);
  }

  bool same_shape(const Band& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  friend bool operator==(const Band&, const Band&) = default;

 private:
  int width_;
  int height_;
  std::vector<Intensity> pixels_;
};

// Ordered R, G, B bands of one image plus the method label it is reported
// under ("MS", "HFA", ...).
class MultibandImage {
 public:
  MultibandImage(Band r, Band g, Band b, std::string label);

  const Band& r() const { return bands_[0]; }
  const Band& g() const { return bands_[1]; }
  const Band& b() const { return bands_[2]; }
  const Band& band(BandId id) const;
  const std::string& label() const { return label_; }

  int width() const { return bands_[0].width(); }
  int height() const { return bands_[0].height(); }

  MultibandImage relabeled(std::string label) const;

  friend bool operator==(const MultibandImage&, const MultibandImage&) = default;

 private:
  std::array<Band, 3> bands_;
  std::string label_;
};

inline constexpr std::array<BandId, 3> kRgb = {BandId::R, BandId::G, BandId::B};

// Rectangular block [x0, x0+w) x [y0, y0+h).
struct RegionSpec {
  std::string name;
  int x0 = 0;
  int y0 = 0;
  int w = 1;
  int h = 1;

  bool fits(int width, int height) const;
  friend bool operator==(const RegionSpec&, const RegionSpec&) = default;
};

// Population statistics; std_dev uses the population divisor n.
struct PixelStats {
  double mean = 0.0;
  double std_dev = 0.0;
  std::uint64_t n = 0;
  Intensity min = 0;
  Intensity max = 0;
};

// Occurrence count of each intensity in a pixel population.
using IntensityCounts = std::array<std::uint64_t, 256>;

// Rounds half up and clamps into [0, 255].
Intensity to_intensity(double value);

Band upsample_nearest(const Band& src, int factor);
MultibandImage upsample_nearest(const MultibandImage& src, int factor);

// L = round((R + G + B) / 3).
Band l_component(const MultibandImage& img);

Band extract_block(const Band& band, const RegionSpec& region);

PixelStats pixel_stats(std::span<const Intensity> pixels);
PixelStats pixel_stats(const IntensityCounts& counts);

IntensityCounts count_intensities(std::span<const Intensity> pixels);
// Counts only pixels whose mask byte equals `select`.
IntensityCounts count_intensities(std::span<const Intensity> pixels,
                                  std::span<const std::uint8_t> mask, std::uint8_t select);

}  // namespace fusionqa
