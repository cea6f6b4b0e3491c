#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fusionqa/raster.hpp"
#include "fusionqa/regions.hpp"

namespace fusionqa {

enum class SnrVariant { RegionA, WholeB };

std::string_view to_string(SnrVariant variant);

struct SnrResult {
  std::string method;
  SnrVariant variant = SnrVariant::RegionA;
  BandId band = BandId::R;
  std::string scope;       // region group name or "whole"
  std::optional<double> value;
  std::string marker;
  std::string reference;   // label of M, set for WholeB

  friend bool operator==(const SnrResult&, const SnrResult&) = default;
};

// mu / sigma over a region. Throws ZeroDeviationError for a constant region.
double snr_region(std::span<const Intensity> pixels);
double snr_region(const PixelStats& stats);

// sqrt(sum F^2 / sum (F - M)^2). Throws DimensionError on shape mismatch and
// IdenticalImagesError when F == M.
double snr_whole(const Band& fused, const Band& reference);

std::vector<SnrResult> snr_region_report(const MultibandImage& img, const RegionSet& regions);
std::vector<SnrResult> snr_whole_report(const MultibandImage& fused, const MultibandImage& ms);

}  // namespace fusionqa
