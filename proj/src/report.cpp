#include "fusionqa/report.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include "fusionqa/error.hpp"

namespace fusionqa {

namespace {

void spatial_metrics(MetricReport& report, const Band& band, BandId id, const std::string& method,
                     const EvaluateOptions& options) {
  for (ContrastMetric metric : {ContrastMetric::Michelson, ContrastMetric::Csa}) {
    auto part = block_contrast_report(metric, band, id, method, options.regions, true);
    report.contrast.insert(report.contrast.end(), part.begin(), part.end());
  }
  const auto sweep =
      threshold_sweep(band, options.thresholds, method + ":" + std::string(to_string(id)));
  auto part = csa_report(band, id, method, sweep);
  report.contrast.insert(report.contrast.end(), part.begin(), part.end());
  for (const auto& entry : sweep) {
    report.edge_rates.push_back(
        {method, id, entry.threshold, entry.mask.edge_count, entry.mask.size(), entry.rate});
  }
}

void histogram_entries(MetricReport& report, const HistogramSuite& suite) {
  for (const auto& pair : suite.pairs) {
    report.histograms.push_back({suite.method, suite.reference, pair.band, suite.scope,
                                 suite.threshold, pair.delta, pair.marker, pair.fused,
                                 pair.reference});
  }
}

void require_same_size(const Band& pan, int width, int height, const std::string& label) {
  if (width != pan.width() || height != pan.height()) {
    throw DimensionError("'" + label + "' is " + std::to_string(width) + "x" +
                         std::to_string(height) + " but PAN is " + std::to_string(pan.width()) +
                         "x" + std::to_string(pan.height()));
  }
}

}  // namespace

MetricReport evaluate(const Band& pan, const MultibandImage& ms,
                      std::span<const MultibandImage> fused, const EvaluateOptions& options) {
  try {
    validate_thresholds(options.thresholds);
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  if (options.histogram_threshold < 0 || options.histogram_threshold > 255) {
    throw ConfigError("histogram threshold must lie in [0, 255]");
  }
  options.regions.validate(pan.width(), pan.height());
  require_same_size(pan, ms.width(), ms.height(), ms.label());
  std::set<std::string> labels = {"PAN", ms.label()};
  for (const auto& f : fused) {
    require_same_size(pan, f.width(), f.height(), f.label());
    if (!labels.insert(f.label()).second) {
      throw ConfigError("method label '" + f.label() + "' is used more than once");
    }
  }

  MetricReport report;
  report.regions = options.regions;
  report.thresholds = options.thresholds;
  report.histogram_threshold = options.histogram_threshold;

  // PAN is a spatial reference only.
  spatial_metrics(report, pan, BandId::PAN, "PAN", options);

  auto multiband = [&](const MultibandImage& img) {
    for (BandId id : kRgb) spatial_metrics(report, img.band(id), id, img.label(), options);
    auto snr_a = snr_region_report(img, options.regions);
    report.snr.insert(report.snr.end(), snr_a.begin(), snr_a.end());
  };
  multiband(ms);
  for (const auto& f : fused) {
    multiband(f);
    auto snr_b = snr_whole_report(f, ms);
    report.snr.insert(report.snr.end(), snr_b.begin(), snr_b.end());
    histogram_entries(report, edge_histogram_suite(f, ms, options.histogram_threshold));
    histogram_entries(report, whole_histogram_suite(f, ms));
  }
  return report;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

using nlohmann::json;

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }
json optional_int(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> read_optional_number(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

std::optional<int> read_optional_int(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<int>();
}

json histogram_json(const Histogram256& h) {
  return {{"total", h.total}, {"bins", h.bins}};
}

Histogram256 histogram_from(const json& j, BandId band, const std::string& scope) {
  Histogram256 h;
  h.total = j.at("total").get<std::uint64_t>();
  const auto bins = j.at("bins").get<std::vector<std::uint64_t>>();
  if (bins.size() != 256) throw ConfigError("histogram must have 256 bins");
  std::copy(bins.begin(), bins.end(), h.bins.begin());
  h.band = band;
  h.scope = scope;
  return h;
}

ContrastMetric contrast_metric_from(const std::string& s) {
  if (s == "michelson") return ContrastMetric::Michelson;
  if (s == "csa") return ContrastMetric::Csa;
  throw ConfigError("unknown contrast metric '" + s + "'");
}

SnrVariant snr_variant_from(const std::string& s) {
  if (s == "snr_a") return SnrVariant::RegionA;
  if (s == "snr_b") return SnrVariant::WholeB;
  throw ConfigError("unknown SNR variant '" + s + "'");
}

}  // namespace

nlohmann::json to_json(const MetricReport& report) {
  json doc;
  doc["tool"] = {{"name", "fusionqa"}, {"version", report.tool_version}};
  doc["generated_at"] = report.generated_at;

  json inputs = json::array();
  for (const auto& in : report.inputs) {
    inputs.push_back({{"role", in.role}, {"label", in.label}, {"path", in.path},
                      {"width", in.width}, {"height", in.height},
                      {"upsample_factor", in.upsample_factor}});
  }
  doc["inputs"] = inputs;
  doc["regions"] = region_set_to_json(report.regions).at("regions");
  doc["thresholds"] = report.thresholds;
  doc["histogram_threshold"] = report.histogram_threshold;

  json contrast = json::array();
  for (const auto& c : report.contrast) {
    contrast.push_back({{"method", c.method}, {"metric", to_string(c.metric)},
                        {"band", to_string(c.band)}, {"scope", c.scope},
                        {"threshold", optional_int(c.threshold)}, {"value", optional_number(c.value)},
                        {"marker", c.marker}, {"n", c.n}});
  }
  doc["contrast"] = contrast;

  json snr = json::array();
  for (const auto& s : report.snr) {
    snr.push_back({{"method", s.method}, {"variant", to_string(s.variant)},
                   {"band", to_string(s.band)}, {"scope", s.scope},
                   {"value", optional_number(s.value)}, {"marker", s.marker},
                   {"reference", s.reference}});
  }
  doc["snr"] = snr;

  json rates = json::array();
  for (const auto& r : report.edge_rates) {
    rates.push_back({{"method", r.method}, {"band", to_string(r.band)}, {"threshold", r.threshold},
                     {"edge_count", r.edge_count}, {"n", r.n}, {"rate", r.rate}});
  }
  doc["edge_rates"] = rates;

  json hist = json::array();
  for (const auto& h : report.histograms) {
    hist.push_back({{"method", h.method}, {"reference", h.reference}, {"band", to_string(h.band)},
                    {"scope", h.scope}, {"threshold", optional_int(h.threshold)},
                    {"value", optional_number(h.value)}, {"marker", h.marker},
                    {"fused", histogram_json(h.fused)}, {"ms", histogram_json(h.ms)}});
  }
  doc["histograms"] = hist;
  doc["notes"] = report.notes;
  return doc;
}

MetricReport report_from_json(const nlohmann::json& doc) {
  try {
    MetricReport report;
    report.tool_version = doc.at("tool").at("version").get<std::string>();
    report.generated_at = doc.at("generated_at").get<std::string>();
    for (const auto& in : doc.at("inputs")) {
      report.inputs.push_back({in.at("role").get<std::string>(), in.at("label").get<std::string>(),
                               in.at("path").get<std::string>(), in.at("width").get<int>(),
                               in.at("height").get<int>(), in.at("upsample_factor").get<int>()});
    }
    for (const auto& r : doc.at("regions")) {
      RegionSpec spec{r.at("name").get<std::string>(), r.at("x0").get<int>(), r.at("y0").get<int>(),
                      r.at("w").get<int>(), r.at("h").get<int>()};
      const auto group = r.at("group").get<std::string>();
      auto& groups = report.regions.groups;
      auto it = std::find_if(groups.begin(), groups.end(),
                             [&](const RegionGroup& g) { return g.name == group; });
      if (it == groups.end()) {
        groups.push_back({group, {spec}});
      } else {
        it->blocks.push_back(spec);
      }
    }
    report.thresholds = doc.at("thresholds").get<std::vector<int>>();
    report.histogram_threshold = doc.at("histogram_threshold").get<int>();

    for (const auto& c : doc.at("contrast")) {
      report.contrast.push_back({c.at("method").get<std::string>(),
                                 contrast_metric_from(c.at("metric").get<std::string>()),
                                 band_from_string(c.at("band").get<std::string>()),
                                 c.at("scope").get<std::string>(), read_optional_int(c.at("threshold")),
                                 read_optional_number(c.at("value")), c.at("marker").get<std::string>(),
                                 c.at("n").get<std::uint64_t>()});
    }
    for (const auto& s : doc.at("snr")) {
      report.snr.push_back({s.at("method").get<std::string>(),
                            snr_variant_from(s.at("variant").get<std::string>()),
                            band_from_string(s.at("band").get<std::string>()),
                            s.at("scope").get<std::string>(), read_optional_number(s.at("value")),
                            s.at("marker").get<std::string>(), s.at("reference").get<std::string>()});
    }
    for (const auto& r : doc.at("edge_rates")) {
      report.edge_rates.push_back({r.at("method").get<std::string>(),
                                   band_from_string(r.at("band").get<std::string>()),
                                   r.at("threshold").get<int>(), r.at("edge_count").get<std::uint64_t>(),
                                   r.at("n").get<std::uint64_t>(), r.at("rate").get<double>()});
    }
    for (const auto& h : doc.at("histograms")) {
      const BandId band = band_from_string(h.at("band").get<std::string>());
      const auto scope = h.at("scope").get<std::string>();
      report.histograms.push_back({h.at("method").get<std::string>(),
                                   h.at("reference").get<std::string>(), band, scope,
                                   read_optional_int(h.at("threshold")),
                                   read_optional_number(h.at("value")),
                                   h.at("marker").get<std::string>(),
                                   histogram_from(h.at("fused"), band, scope),
                                   histogram_from(h.at("ms"), band, scope)});
    }
    report.notes = doc.at("notes").get<std::vector<std::string>>();
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed report JSON: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("malformed report JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// CSV

std::string format_value(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string value_or_marker(const std::optional<double>& v, const std::string& marker) {
  return v ? format_value(*v) : marker;
}

void csv_row(std::ostringstream& out, std::initializer_list<std::string> fields) {
  bool first = true;
  for (const auto& f : fields) {
    if (!first) out << ',';
    out << csv_field(f);
    first = false;
  }
  out << '\n';
}

std::string opt_int(const std::optional<int>& v) { return v ? std::to_string(*v) : std::string(); }

}  // namespace

std::string to_csv(const MetricReport& report) {
  std::ostringstream out;
  out << "method,metric,band,scope,threshold,value,n,reference\n";
  for (const auto& c : report.contrast) {
    csv_row(out, {c.method, std::string(to_string(c.metric)), std::string(to_string(c.band)), c.scope,
                  opt_int(c.threshold), value_or_marker(c.value, c.marker), std::to_string(c.n), ""});
  }
  for (const auto& s : report.snr) {
    csv_row(out, {s.method, std::string(to_string(s.variant)), std::string(to_string(s.band)), s.scope,
                  "", value_or_marker(s.value, s.marker), "", s.reference});
  }
  for (const auto& r : report.edge_rates) {
    csv_row(out, {r.method, "edge_rate", std::string(to_string(r.band)),
                  "edges@" + std::to_string(r.threshold), std::to_string(r.threshold),
                  format_value(r.rate), std::to_string(r.n), ""});
  }
  for (const auto& h : report.histograms) {
    csv_row(out, {h.method, "hist_delta", std::string(to_string(h.band)), h.scope, opt_int(h.threshold),
                  value_or_marker(h.value, h.marker), std::to_string(h.fused.total), h.reference});
  }
  return out.str();
}

}  // namespace fusionqa
