#include "fusionqa/edge_map.hpp"

#include "fusionqa/error.hpp"
#include "fusionqa/kernels.hpp"

namespace fusionqa {

GradientField sobel_magnitude(const Band& band) {
  GradientField field{band.width(), band.height(), std::vector<double>(band.size())};
  kernels::sobel_magnitude(band.pixels(), band.width(), band.height(), field.magnitudes);
  return field;
}

EdgeMask label_edges(const GradientField& grad, int threshold, std::string source) {
  if (threshold < 0 || threshold > 255) {
    throw InvalidArgument("edge threshold " + std::to_string(threshold) + " outside [0, 255]");
  }
  EdgeMask mask;
  mask.width = grad.width;
  mask.height = grad.height;
  mask.threshold = threshold;
  mask.source = std::move(source);
  mask.labels.resize(grad.magnitudes.size());
  mask.edge_count = kernels::threshold_labels(grad.magnitudes, threshold, mask.labels);
  return mask;
}

double edge_rate(const EdgeMask& mask) {
  if (mask.labels.empty()) throw EmptyRegionError("edge rate of an empty mask");
  return static_cast<double>(mask.edge_count) / static_cast<double>(mask.labels.size());
}

void validate_thresholds(std::span<const int> thresholds) {
  if (thresholds.empty()) throw InvalidArgument("threshold list is empty");
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (thresholds[i] < 0 || thresholds[i] > 255) {
      throw InvalidArgument("threshold " + std::to_string(thresholds[i]) + " outside [0, 255]");
    }
    if (i > 0 && thresholds[i] <= thresholds[i - 1]) {
      throw InvalidArgument("thresholds must be strictly increasing (" +
                            std::to_string(thresholds[i - 1]) + " then " +
                            std::to_string(thresholds[i]) + ")");
    }
  }
}

std::vector<SweepEntry> threshold_sweep(const Band& band, std::span<const int> thresholds,
                                        std::string source) {
  validate_thresholds(thresholds);
  const GradientField grad = sobel_magnitude(band);
  std::vector<SweepEntry> sweep;
  sweep.reserve(thresholds.size());
  for (int t : thresholds) {
    EdgeMask mask = label_edges(grad, t, source);
    const double rate = edge_rate(mask);
    sweep.push_back(SweepEntry{t, std::move(mask), rate});
  }
  return sweep;
}

Band mask_to_band(const EdgeMask& mask) {
  std::vector<Intensity> px(mask.labels.size());
  for (std::size_t i = 0; i < px.size(); ++i) px[i] = mask.labels[i] ? 255 : 0;
  return Band(mask.width, mask.height, std::move(px));
}

}  // namespace fusionqa
