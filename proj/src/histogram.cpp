#include "fusionqa/histogram.hpp"

#include <cmath>

#include "fusionqa/error.hpp"

namespace fusionqa {

namespace {

Histogram256 finish(IntensityCounts bins, BandId id, std::string scope) {
  Histogram256 h;
  h.bins = bins;
  for (auto c : bins) h.total += c;
  h.band = id;
  h.scope = std::move(scope);
  return h;
}

}  // namespace

Histogram256 build_histogram(const Band& band, BandId id) {
  return finish(count_intensities(band.pixels()), id, "whole");
}

Histogram256 build_histogram(const Band& band, const EdgeMask& mask, BandId id) {
  if (mask.width != band.width() || mask.height != band.height()) {
    throw DimensionError("edge mask " + std::to_string(mask.width) + "x" +
                         std::to_string(mask.height) + " does not match band " +
                         std::to_string(band.width()) + "x" + std::to_string(band.height()));
  }
  return finish(count_intensities(band.pixels(), mask.labels, 1), id,
                "edges@" + std::to_string(mask.threshold));
}

double histogram_delta(const Histogram256& a, const Histogram256& b) {
  if (a.total == 0 || b.total == 0) {
    throw EmptyHistogramError("histogram difference needs two non-empty histograms");
  }
  // sum |a/ta - b/tb| / 2 = sum |a*tb - b*ta| / (2*ta*tb), kept in integers so
  // the result is exactly 0 for equal shapes and never exceeds 1.
  __extension__ using Wide = unsigned __int128;
  Wide num = 0;
  for (int v = 0; v < 256; ++v) {
    const Wide x = static_cast<Wide>(a.bins[v]) * b.total;
    const Wide y = static_cast<Wide>(b.bins[v]) * a.total;
    num += x > y ? x - y : y - x;
  }
  const Wide den = static_cast<Wide>(a.total) * b.total * 2;
  return static_cast<double>(static_cast<long double>(num) / static_cast<long double>(den));
}

namespace {

void check_pair(const MultibandImage& fused, const MultibandImage& ms) {
  if (fused.width() != ms.width() || fused.height() != ms.height()) {
    throw DimensionError("'" + fused.label() + "' and '" + ms.label() + "' differ in size");
  }
}

void fill_delta(HistogramPair& pair) {
  try {
    pair.delta = histogram_delta(pair.fused, pair.reference);
  } catch (const EmptyHistogramError&) {
    pair.marker = pair.fused.total == 0 && pair.reference.total == 0
                      ? marker::kNoEdges
                      : marker::kEmptyHistogram;
  }
}

}  // namespace

HistogramSuite edge_histogram_suite(const MultibandImage& fused, const MultibandImage& ms,
                                    int threshold) {
  check_pair(fused, ms);
  HistogramSuite suite{fused.label(), ms.label(), "edges@" + std::to_string(threshold), threshold, {}};
  const Band fused_l = l_component(fused);
  const Band ms_l = l_component(ms);
  for (BandId id : {BandId::R, BandId::G, BandId::B, BandId::L}) {
    const Band& f = id == BandId::L ? fused_l : fused.band(id);
    const Band& m = id == BandId::L ? ms_l : ms.band(id);
    HistogramPair pair;
    pair.band = id;
    pair.fused = build_histogram(f, label_edges(sobel_magnitude(f), threshold), id);
    pair.reference = build_histogram(m, label_edges(sobel_magnitude(m), threshold), id);
    fill_delta(pair);
    suite.pairs.push_back(std::move(pair));
  }
  return suite;
}

HistogramSuite whole_histogram_suite(const MultibandImage& fused, const MultibandImage& ms) {
  check_pair(fused, ms);
  HistogramSuite suite{fused.label(), ms.label(), "whole", std::nullopt, {}};
  const Band fused_l = l_component(fused);
  const Band ms_l = l_component(ms);
  for (BandId id : {BandId::R, BandId::G, BandId::B, BandId::L}) {
    HistogramPair pair;
    pair.band = id;
    pair.fused = build_histogram(id == BandId::L ? fused_l : fused.band(id), id);
    pair.reference = build_histogram(id == BandId::L ? ms_l : ms.band(id), id);
    fill_delta(pair);
    suite.pairs.push_back(std::move(pair));
  }
  return suite;
}

}  // namespace fusionqa
