#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fusionqa/edge_map.hpp"
#include "fusionqa/raster.hpp"

namespace fusionqa {

struct Histogram256 {
  IntensityCounts bins{};
  std::uint64_t total = 0;
  BandId band = BandId::R;
  std::string scope = "whole";

  friend bool operator==(const Histogram256&, const Histogram256&) = default;
};

Histogram256 build_histogram(const Band& band, BandId id = BandId::R);
// Edge-labelled pixels only. Throws DimensionError if the mask does not
// match the band.
Histogram256 build_histogram(const Band& band, const EdgeMask& mask, BandId id = BandId::R);

// Total-variation distance between the normalised histograms, in [0, 1].
double histogram_delta(const Histogram256& a, const Histogram256& b);

struct HistogramPair {
  BandId band = BandId::R;
  Histogram256 fused;
  Histogram256 reference;
  std::optional<double> delta;
  std::string marker;
};

struct HistogramSuite {
  std::string method;
  std::string reference;
  std::string scope;                // "edges@<t>" or "whole"
  std::optional<int> threshold;
  std::vector<HistogramPair> pairs; // R, G, B, L
};

// Each image's edge pixels come from its own Sobel mask at `threshold`.
HistogramSuite edge_histogram_suite(const MultibandImage& fused, const MultibandImage& ms,
                                    int threshold);
HistogramSuite whole_histogram_suite(const MultibandImage& fused, const MultibandImage& ms);

}  // namespace fusionqa
