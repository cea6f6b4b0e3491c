#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fusionqa/raster.hpp"

namespace fusionqa {

// Per-pixel Sobel magnitude of one band.
struct GradientField {
  int width = 0;
  int height = 0;
  std::vector<double> magnitudes;
};

// Edge (1) / homogeneous (0) label per pixel at one threshold.
struct EdgeMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> labels;
  int threshold = 0;
  std::string source;
  std::uint64_t edge_count = 0;

  std::uint64_t size() const { return labels.size(); }
  std::uint64_t homogeneous_count() const { return size() - edge_count; }
};

struct SweepEntry {
  int threshold = 0;
  EdgeMask mask;
  double rate = 0.0;
};

inline const std::vector<int> kDefaultThresholds = {20, 40, 60, 80, 100};

// sqrt(Gx^2 + Gy^2) with the 3x3 Sobel pair and replicate borders; no
// smoothing beforehand and no clamping of the result.
GradientField sobel_magnitude(const Band& band);

// Strictly greater than: a magnitude equal to the threshold is homogeneous.
EdgeMask label_edges(const GradientField& grad, int threshold, std::string source = {});

double edge_rate(const EdgeMask& mask);

void validate_thresholds(std::span<const int> thresholds);

// One gradient, one mask per threshold.
std::vector<SweepEntry> threshold_sweep(const Band& band, std::span<const int> thresholds,
                                        std::string source = {});

// Renders edge = 255, homogeneous = 0.
Band mask_to_band(const EdgeMask& mask);

}  // namespace fusionqa
