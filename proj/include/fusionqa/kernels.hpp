#pragma once

// OpenMP pixel kernels. Each one has a serial counterpart in
// fusionqa/reference.hpp that the tests and the benchmark compare against.

#include <cstdint>
#include <span>

#include "fusionqa/raster.hpp"

namespace fusionqa::kernels {

// Worker cap: FUSIONQA_THREADS when set to a positive integer, otherwise
// the OpenMP default.
int worker_count();
void apply_worker_cap();

// 3x3 Sobel, replicate borders. out[i] = sqrt(gx^2 + gy^2).
void sobel_magnitude(std::span<const Intensity> src, int width, int height,
                     std::span<double> out);

// labels[i] = magnitude[i] > threshold; returns the number of set labels.
std::uint64_t threshold_labels(std::span<const double> magnitude, double threshold,
                               std::span<std::uint8_t> labels);

IntensityCounts histogram(std::span<const Intensity> pixels);
IntensityCounts masked_histogram(std::span<const Intensity> pixels,
                                 std::span<const std::uint8_t> mask, std::uint8_t select);

// Exact integer sums; 64 bits hold 255^2 times ~2.8e14 pixels.
std::uint64_t sum_of_squares(std::span<const Intensity> values);
std::uint64_t sum_of_squared_differences(std::span<const Intensity> a,
                                         std::span<const Intensity> b);

void upsample_nearest(std::span<const Intensity> src, int width, int height, int factor,
                      std::span<Intensity> out);

// Mean over the (2r+1)^2 window with replicate borders, rounded half up.
void box_blur(std::span<const Intensity> src, int width, int height, int radius,
              std::span<Intensity> out);

}  // namespace fusionqa::kernels
