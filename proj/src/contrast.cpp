#include "fusionqa/contrast.hpp"

#include <algorithm>

#include "fusionqa/error.hpp"

namespace fusionqa {

std::string_view to_string(ContrastMetric metric) {
  return metric == ContrastMetric::Michelson ? "michelson" : "csa";
}

double michelson(const PixelStats& stats) {
  const double lo = stats.min;
  const double hi = stats.max;
  if (hi + lo == 0.0) throw DegenerateRegionError("Michelson contrast of an all-black region");
  return (hi - lo) / (hi + lo);
}

double michelson(std::span<const Intensity> pixels) {
  if (pixels.empty()) throw EmptyRegionError("Michelson contrast of an empty region");
  const auto [lo, hi] = std::minmax_element(pixels.begin(), pixels.end());
  PixelStats s;
  s.min = *lo;
  s.max = *hi;
  s.n = pixels.size();
  return michelson(s);
}

double csa(const PixelStats& stats) {
  if (stats.n == 0) throw EmptyRegionError("CSA of an empty population");
  if (stats.mean <= 0.0) throw DegenerateRegionError("CSA of an all-black population");
  return stats.std_dev / stats.mean;
}

double csa(std::span<const Intensity> pixels) { return csa(pixel_stats(pixels)); }

namespace {

ContrastResult population_csa(const IntensityCounts& counts, ContrastResult slot,
                              const char* empty_marker) {
  std::uint64_t n = 0;
  for (auto c : counts) n += c;
  slot.n = n;
  if (n == 0) {
    slot.marker = empty_marker;
    return slot;
  }
  try {
    slot.value = csa(pixel_stats(counts));
  } catch (const DegenerateRegionError&) {
    slot.marker = marker::kAllBlack;
  }
  return slot;
}

}  // namespace

std::vector<ContrastResult> csa_report(const Band& band, BandId id, const std::string& method,
                                       std::span<const SweepEntry> sweep) {
  std::vector<ContrastResult> out;
  out.reserve(sweep.size() * 2);
  for (const auto& entry : sweep) {
    const EdgeMask& mask = entry.mask;
    if (mask.width != band.width() || mask.height != band.height()) {
      throw DimensionError("edge mask " + std::to_string(mask.width) + "x" +
                           std::to_string(mask.height) + " does not match " +
                           std::string(to_string(id)) + " band " + std::to_string(band.width()) +
                           "x" + std::to_string(band.height()));
    }
    const std::string t = std::to_string(entry.threshold);
    ContrastResult slot{method, ContrastMetric::Csa, id, "", entry.threshold, {}, {}, 0};

    slot.scope = "edges@" + t;
    out.push_back(population_csa(count_intensities(band.pixels(), mask.labels, 1), slot,
                                 marker::kNoEdges));
    slot.scope = "homogeneous@" + t;
    out.push_back(population_csa(count_intensities(band.pixels(), mask.labels, 0), slot,
                                 marker::kNoHomogeneous));
  }
  return out;
}

std::vector<BandSweep> sweep_bands(const MultibandImage& img, std::span<const int> thresholds) {
  std::vector<BandSweep> sweeps;
  for (BandId id : kRgb) {
    sweeps.push_back({id, threshold_sweep(img.band(id), thresholds,
                                          img.label() + ":" + std::string(to_string(id)))});
  }
  return sweeps;
}

std::vector<ContrastResult> csa_report(const MultibandImage& img,
                                       std::span<const BandSweep> sweeps) {
  auto find = [&](BandId id) -> const BandSweep& {
    for (const auto& s : sweeps)
      if (s.band == id) return s;
    throw DimensionError("no edge masks supplied for band " + std::string(to_string(id)));
  };
  const BandSweep& first = find(BandId::R);
  for (BandId id : kRgb) {
    const BandSweep& s = find(id);
    bool same = s.entries.size() == first.entries.size();
    for (std::size_t i = 0; same && i < s.entries.size(); ++i) {
      same = s.entries[i].threshold == first.entries[i].threshold;
    }
    if (!same) {
      throw DimensionError("band " + std::string(to_string(id)) +
                           " was swept with a different threshold list");
    }
  }

  std::vector<ContrastResult> out;
  for (BandId id : kRgb) {
    auto part = csa_report(img.band(id), id, img.label(), find(id).entries);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::vector<ContrastResult> block_contrast_report(ContrastMetric metric, const Band& band,
                                                  BandId id, const std::string& method,
                                                  const RegionSet& regions, bool include_whole) {
  auto evaluate = [&](std::span<const Intensity> px, std::string scope) {
    ContrastResult r{method, metric, id, std::move(scope), std::nullopt, {}, {}, px.size()};
    try {
      const PixelStats s = pixel_stats(px);
      r.value = metric == ContrastMetric::Michelson ? michelson(s) : csa(s);
    } catch (const DegenerateRegionError&) {
      r.marker = marker::kAllBlack;
    }
    return r;
  };

  std::vector<ContrastResult> out;
  if (include_whole) out.push_back(evaluate(band.pixels(), "whole"));
  for (const auto& group : regions.groups) {
    out.push_back(evaluate(pooled_pixels(band, group), group.name));
  }
  return out;
}

std::vector<ContrastResult> michelson_report(const MultibandImage& img, const RegionSet& regions,
                                             bool include_whole) {
  std::vector<ContrastResult> out;
  for (BandId id : kRgb) {
    auto part = block_contrast_report(ContrastMetric::Michelson, img.band(id), id, img.label(),
                                      regions, include_whole);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace fusionqa
