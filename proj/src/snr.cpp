#include "fusionqa/snr.hpp"

#include <cmath>

#include "fusionqa/error.hpp"
#include "fusionqa/kernels.hpp"

namespace fusionqa {

std::string_view to_string(SnrVariant variant) {
  return variant == SnrVariant::RegionA ? "snr_a" : "snr_b";
}

double snr_region(const PixelStats& stats) {
  if (stats.n == 0) throw EmptyRegionError("SNR of an empty region");
  if (stats.std_dev == 0.0) throw ZeroDeviationError("SNR undefined for a constant region");
  return stats.mean / stats.std_dev;
}

double snr_region(std::span<const Intensity> pixels) { return snr_region(pixel_stats(pixels)); }

double snr_whole(const Band& fused, const Band& reference) {
  if (!fused.same_shape(reference)) {
    throw DimensionError("fused band " + std::to_string(fused.width()) + "x" +
                         std::to_string(fused.height()) + " vs reference " +
                         std::to_string(reference.width()) + "x" +
                         std::to_string(reference.height()));
  }
  const std::uint64_t noise = kernels::sum_of_squared_differences(fused.pixels(), reference.pixels());
  if (noise == 0) throw IdenticalImagesError("fused band is identical to the reference");
  const std::uint64_t signal = kernels::sum_of_squares(fused.pixels());
  return std::sqrt(static_cast<double>(signal) / static_cast<double>(noise));
}

std::vector<SnrResult> snr_region_report(const MultibandImage& img, const RegionSet& regions) {
  std::vector<SnrResult> out;
  for (BandId id : kRgb) {
    for (const auto& group : regions.groups) {
      SnrResult r{img.label(), SnrVariant::RegionA, id, group.name, {}, {}, {}};
      try {
        r.value = snr_region(pooled_pixels(img.band(id), group));
      } catch (const ZeroDeviationError&) {
        r.marker = marker::kConstantRegion;
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<SnrResult> snr_whole_report(const MultibandImage& fused, const MultibandImage& ms) {
  if (fused.width() != ms.width() || fused.height() != ms.height()) {
    throw DimensionError("'" + fused.label() + "' is " + std::to_string(fused.width()) + "x" +
                         std::to_string(fused.height()) + " but '" + ms.label() + "' is " +
                         std::to_string(ms.width()) + "x" + std::to_string(ms.height()));
  }
  std::vector<SnrResult> out;
  for (BandId id : kRgb) {
    SnrResult r{fused.label(), SnrVariant::WholeB, id, "whole", {}, {}, ms.label()};
    try {
      r.value = snr_whole(fused.band(id), ms.band(id));
    } catch (const IdenticalImagesError&) {
      r.marker = marker::kIdenticalImages;
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace fusionqa
