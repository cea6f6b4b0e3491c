#pragma once

// Serial, deliberately naive implementations of the pixel kernels. Not used
// by the library itself: they exist as oracles for the tests and as the
// baseline in bench/.

#include <cstdint>
#include <span>
#include <vector>

#include "fusionqa/raster.hpp"

namespace fusionqa::reference {

std::vector<double> sobel_magnitude(const Band& band);

// Two-pass mean then mean squared deviation.
PixelStats pixel_stats(std::span<const Intensity> pixels);

// sqrt(sum F^2 / sum (F - M)^2) accumulated in double.
double snr_whole(const Band& fused, const Band& reference);

IntensityCounts histogram(const Band& band);
IntensityCounts masked_histogram(const Band& band, std::span<const std::uint8_t> labels);

Band upsample_nearest(const Band& src, int factor);
Band box_blur(const Band& src, int radius);

}  // namespace fusionqa::reference
