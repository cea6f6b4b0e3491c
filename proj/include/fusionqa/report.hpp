#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "fusionqa/contrast.hpp"
#include "fusionqa/histogram.hpp"
#include "fusionqa/regions.hpp"
#include "fusionqa/snr.hpp"

namespace fusionqa {

inline constexpr const char* kToolVersion = "1.0.0";

struct InputEntry {
  std::string role;     // "pan", "ms" or "fused"
  std::string label;
  std::string path;
  int width = 0;        // as evaluated (after MS upsampling)
  int height = 0;
  int upsample_factor = 1;

  friend bool operator==(const InputEntry&, const InputEntry&) = default;
};

struct EdgeRateEntry {
  std::string method;
  BandId band = BandId::R;
  int threshold = 0;
  std::uint64_t edge_count = 0;
  std::uint64_t n = 0;
  double rate = 0.0;

  friend bool operator==(const EdgeRateEntry&, const EdgeRateEntry&) = default;
};

struct HistogramDeltaEntry {
  std::string method;
  std::string reference;
  BandId band = BandId::R;
  std::string scope;
  std::optional<int> threshold;
  std::optional<double> value;
  std::string marker;
  Histogram256 fused;
  Histogram256 ms;

  friend bool operator==(const HistogramDeltaEntry&, const HistogramDeltaEntry&) = default;
};

struct MetricReport {
  std::string tool_version = kToolVersion;
  std::string generated_at;
  std::vector<InputEntry> inputs;
  RegionSet regions;
  std::vector<int> thresholds;
  int histogram_threshold = 20;
  std::vector<ContrastResult> contrast;
  std::vector<SnrResult> snr;
  std::vector<EdgeRateEntry> edge_rates;
  std::vector<HistogramDeltaEntry> histograms;
  std::vector<std::string> notes;

  friend bool operator==(const MetricReport&, const MetricReport&) = default;
};

struct EvaluateOptions {
  std::vector<int> thresholds = kDefaultThresholds;
  int histogram_threshold = 20;
  RegionSet regions;
};

// Full metric suite. PAN gets spatial metrics only (as band "PAN"); MS and
// every fused image get spatial and region SNR; fused images additionally
// get whole-image SNR and histogram comparison against MS. All images must
// share PAN's dimensions.
MetricReport evaluate(const Band& pan, const MultibandImage& ms,
                      std::span<const MultibandImage> fused, const EvaluateOptions& options);

nlohmann::json to_json(const MetricReport& report);
MetricReport report_from_json(const nlohmann::json& doc);

// Columns: method,metric,band,scope,threshold,value,n,reference. Values have
// 6 significant digits; undefined values carry their marker text.
std::string to_csv(const MetricReport& report);

std::string format_value(double value);

}  // namespace fusionqa
