#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fusionqa/edge_map.hpp"
#include "fusionqa/raster.hpp"
#include "fusionqa/regions.hpp"

namespace fusionqa {

enum class ContrastMetric { Michelson, Csa };

std::string_view to_string(ContrastMetric metric);

// One contrast value, or a marker when the metric is undefined for the
// population.
struct ContrastResult {
  std::string method;
  ContrastMetric metric = ContrastMetric::Csa;
  BandId band = BandId::R;
  std::string scope;                 // "whole", a region group, "edges@20", "homogeneous@20"
  std::optional<int> threshold;      // set for edge/homogeneous scopes
  std::optional<double> value;
  std::string marker;                // non-empty iff !value
  std::uint64_t n = 0;

  friend bool operator==(const ContrastResult&, const ContrastResult&) = default;
};

// (Imax - Imin) / (Imax + Imin).
double michelson(std::span<const Intensity> pixels);
double michelson(const PixelStats& stats);

// sigma / mu, i.e. Michelson contrast of {mu - sigma, mu + sigma}.
double csa(std::span<const Intensity> pixels);
double csa(const PixelStats& stats);

// One band's edge and homogeneous CSA for each sweep entry, in sweep order,
// edges before homogeneous.
std::vector<ContrastResult> csa_report(const Band& band, BandId id, const std::string& method,
                                       std::span<const SweepEntry> sweep);

struct BandSweep {
  BandId band = BandId::R;
  std::vector<SweepEntry> entries;
};

// Sweeps R, G and B of img independently.
std::vector<BandSweep> sweep_bands(const MultibandImage& img, std::span<const int> thresholds);

// Bands in R, G, B order; all three sweeps must use the same thresholds.
std::vector<ContrastResult> csa_report(const MultibandImage& img,
                                       std::span<const BandSweep> sweeps);

// Block-based contrast: one value per region group (pooled over its blocks)
// plus, optionally, the whole band.
std::vector<ContrastResult> block_contrast_report(ContrastMetric metric, const Band& band,
                                                  BandId id, const std::string& method,
                                                  const RegionSet& regions, bool include_whole);

std::vector<ContrastResult> michelson_report(const MultibandImage& img, const RegionSet& regions,
                                             bool include_whole);

}  // namespace fusionqa
