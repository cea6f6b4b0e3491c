#include "fusionqa/charts.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "fusionqa/error.hpp"

namespace fusionqa::charts {

namespace {

// First-appearance order, kept stable so identical reports draw identically.
template <typename T>
void add_unique(std::vector<T>& list, const T& item) {
  if (std::find(list.begin(), list.end(), item) == list.end()) list.push_back(item);
}

struct CellKey {
  std::string panel;
  std::string group;
  std::string series;
  auto operator<=>(const CellKey&) const = default;
};

// Collects cells keyed by (panel, group, series) and lays them out in
// first-seen order.
class ChartBuilder {
 public:
  void put(const std::string& panel, const std::string& group, const std::string& series,
           const std::optional<double>& value, const std::string& marker) {
    add_unique(panels_, panel);
    add_unique(groups_[panel], group);
    add_unique(series_, series);
    cells_[{panel, group, series}] = Cell{true, value, marker};
  }

  bool empty() const { return cells_.empty(); }

  BarChart build(std::string stem, std::string title, std::string y_label) const {
    BarChart chart{std::move(stem), std::move(title), std::move(y_label), series_, {}};
    for (const auto& p : panels_) {
      Panel panel{p, {}};
      for (const auto& g : groups_.at(p)) {
        Group group{g, {}};
        for (const auto& s : series_) {
          auto it = cells_.find({p, g, s});
          group.cells.push_back(it == cells_.end() ? Cell{} : it->second);
        }
        panel.groups.push_back(std::move(group));
      }
      chart.panels.push_back(std::move(panel));
    }
    return chart;
  }

 private:
  std::vector<std::string> panels_;
  std::map<std::string, std::vector<std::string>> groups_;
  std::vector<std::string> series_;
  std::map<CellKey, Cell> cells_;
};

std::string band_name(BandId id) { return std::string(to_string(id)); }

bool is_population_scope(const std::string& scope, const char* prefix) {
  return scope.rfind(prefix, 0) == 0;
}

}  // namespace

std::vector<BarChart> build_charts(const MetricReport& report, std::vector<std::string>* skipped) {
  ChartBuilder michelson, csa_blocks, csa_edges, csa_homog, rates, snr_a, snr_b, hist;

  for (const auto& c : report.contrast) {
    if (c.metric == ContrastMetric::Michelson) {
      michelson.put(c.scope, c.method, band_name(c.band), c.value, c.marker);
    } else if (c.threshold && is_population_scope(c.scope, "edges@")) {
      csa_edges.put(band_name(c.band), c.method, "t=" + std::to_string(*c.threshold), c.value, c.marker);
    } else if (c.threshold && is_population_scope(c.scope, "homogeneous@")) {
      csa_homog.put(band_name(c.band), c.method, "t=" + std::to_string(*c.threshold), c.value, c.marker);
    } else {
      csa_blocks.put(c.scope, c.method, band_name(c.band), c.value, c.marker);
    }
  }
  for (const auto& r : report.edge_rates) {
    rates.put(band_name(r.band), r.method, "t=" + std::to_string(r.threshold), r.rate, "");
  }
  for (const auto& s : report.snr) {
    auto& target = s.variant == SnrVariant::RegionA ? snr_a : snr_b;
    target.put(s.scope, s.method, band_name(s.band), s.value, s.marker);
  }
  for (const auto& h : report.histograms) {
    hist.put(h.scope, h.method, band_name(h.band), h.value, h.marker);
  }

  struct Family {
    const ChartBuilder* builder;
    const char* stem;
    const char* title;
    const char* y_label;
  };
  const Family families[] = {
      {&michelson, "michelson", "Michelson contrast (whole image and regions)", "contrast"},
      {&csa_blocks, "csa_whole_regions", "CSA (whole image and regions)", "sigma / mu"},
      {&csa_edges, "csa_edges", "CSA over Sobel edge pixels", "sigma / mu"},
      {&csa_homog, "csa_homogeneous", "CSA over homogeneous pixels", "sigma / mu"},
      {&rates, "edge_rate", "Sobel edge rate", "fraction of pixels"},
      {&snr_a, "snr_regions", "SNR per region (mu / sigma)", "SNR"},
      {&snr_b, "snr_whole", "Whole-image SNR against MS", "SNR"},
      {&hist, "histogram_delta", "Histogram difference against MS", "total variation"},
  };

  std::vector<BarChart> charts;
  for (const auto& f : families) {
    if (f.builder->empty()) {
      if (skipped) skipped->push_back(std::string("chart '") + f.stem + "' skipped: no entries");
      continue;
    }
    charts.push_back(f.builder->build(f.stem, f.title, f.y_label));
  }
  return charts;
}

namespace {

constexpr const char* kPalette[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
                                    "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Smallest 1/2/5 x 10^k not below v.
double nice_ceiling(double v) {
  if (!(v > 0.0) || !std::isfinite(v)) return 1.0;
  const double mag = std::pow(10.0, std::floor(std::log10(v)));
  for (double step : {1.0, 2.0, 5.0, 10.0}) {
    if (step * mag >= v * (1 - 1e-12)) return step * mag;
  }
  return 10.0 * mag;
}

constexpr double kBarW = 12;
constexpr double kGroupGap = 24;
constexpr double kPanelH = 200;
constexpr double kPanelGap = 70;
constexpr double kLeft = 70;
constexpr double kTop = 70;

}  // namespace

std::string render_svg(const BarChart& chart) {
  const std::size_t nseries = std::max<std::size_t>(chart.series.size(), 1);
  std::size_t max_groups = 1;
  for (const auto& p : chart.panels) max_groups = std::max(max_groups, p.groups.size());
  const double group_w = nseries * kBarW + kGroupGap;
  const double plot_w = std::max(300.0, max_groups * group_w);
  const double width = kLeft + plot_w + 40;
  const double height = kTop + chart.panels.size() * (kPanelH + kPanelGap) + 10;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
      << num(height) << "\" viewBox=\"0 0 " << num(width) << " " << num(height)
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << num(kLeft) << "\" y=\"22\" font-size=\"15\" font-weight=\"bold\">"
      << escape(chart.title) << "</text>\n";

  // Legend.
  double lx = kLeft;
  for (std::size_t s = 0; s < chart.series.size(); ++s) {
    svg << "<rect x=\"" << num(lx) << "\" y=\"34\" width=\"10\" height=\"10\" fill=\""
        << kPalette[s % std::size(kPalette)] << "\"/>";
    svg << "<text x=\"" << num(lx + 14) << "\" y=\"43\">" << escape(chart.series[s]) << "</text>\n";
    lx += 24 + 7.0 * chart.series[s].size();
  }

  for (std::size_t pi = 0; pi < chart.panels.size(); ++pi) {
    const Panel& panel = chart.panels[pi];
    const double top = kTop + pi * (kPanelH + kPanelGap);
    const double base = top + kPanelH;

    double vmax = 0.0;
    for (const auto& g : panel.groups)
      for (const auto& c : g.cells)
        if (c.value && std::isfinite(*c.value)) vmax = std::max(vmax, *c.value);
    const double ymax = nice_ceiling(vmax);

    svg << "<text x=\"" << num(kLeft) << "\" y=\"" << num(top - 8) << "\" font-weight=\"bold\">"
        << escape(panel.title) << "</text>\n";
    for (int t = 0; t <= 4; ++t) {
      const double v = ymax * t / 4.0;
      const double y = base - kPanelH * t / 4.0;
      svg << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(y) << "\" x2=\"" << num(kLeft + plot_w)
          << "\" y2=\"" << num(y) << "\" stroke=\"#dddddd\"/>";
      svg << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(y + 4)
          << "\" text-anchor=\"end\">" << tick_label(v) << "</text>\n";
    }
    svg << "<text transform=\"translate(14," << num(top + kPanelH / 2) << ") rotate(-90)\" "
        << "text-anchor=\"middle\">" << escape(chart.y_label) << "</text>\n";
    svg << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(base) << "\" x2=\"" << num(kLeft + plot_w)
        << "\" y2=\"" << num(base) << "\" stroke=\"black\"/>\n";

    for (std::size_t gi = 0; gi < panel.groups.size(); ++gi) {
      const Group& group = panel.groups[gi];
      const double gx = kLeft + kGroupGap / 2 + gi * group_w;
      for (std::size_t s = 0; s < group.cells.size(); ++s) {
        const Cell& cell = group.cells[s];
        if (!cell.present) continue;
        const double x = gx + s * kBarW;
        if (cell.value && std::isfinite(*cell.value)) {
          const double h = std::clamp(*cell.value / ymax, 0.0, 1.0) * kPanelH;
          svg << "<rect class=\"bar\" x=\"" << num(x) << "\" y=\"" << num(base - h) << "\" width=\""
              << num(kBarW - 2) << "\" height=\"" << num(h) << "\" fill=\""
              << kPalette[s % std::size(kPalette)] << "\"><title>" << escape(group.label) << " "
              << escape(chart.series[s]) << ": " << tick_label(*cell.value) << "</title></rect>\n";
        } else {
          svg << "<text class=\"marker\" x=\"" << num(x + (kBarW - 2) / 2) << "\" y=\"" << num(base - 4)
              << "\" text-anchor=\"middle\" fill=\"#999999\">x<title>" << escape(group.label) << " "
              << escape(chart.series[s]) << ": " << escape(cell.marker) << "</title></text>\n";
        }
      }
      svg << "<text x=\"" << num(gx + nseries * kBarW / 2) << "\" y=\"" << num(base + 16)
          << "\" text-anchor=\"middle\">" << escape(group.label) << "</text>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string render_histogram_overlay(const Histogram256& fused, const Histogram256& reference,
                                     const std::string& title) {
  constexpr double w = 620, h = 320, left = 60, top = 40, plot_w = 512, plot_h = 240;
  double peak = 0.0;
  for (const Histogram256* hist : {&fused, &reference}) {
    if (hist->total == 0) continue;
    for (auto c : hist->bins) peak = std::max(peak, static_cast<double>(c) / hist->total);
  }
  const double ymax = nice_ceiling(peak);

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w) << "\" height=\"" << num(h)
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << num(left) << "\" y=\"20\" font-size=\"14\" font-weight=\"bold\">"
      << escape(title) << "</text>\n";
  for (int t = 0; t <= 4; ++t) {
    const double y = top + plot_h - plot_h * t / 4.0;
    svg << "<line x1=\"" << num(left) << "\" y1=\"" << num(y) << "\" x2=\"" << num(left + plot_w)
        << "\" y2=\"" << num(y) << "\" stroke=\"#dddddd\"/><text x=\"" << num(left - 6) << "\" y=\""
        << num(y + 4) << "\" text-anchor=\"end\">" << tick_label(ymax * t / 4.0) << "</text>\n";
  }
  for (int v = 0; v <= 256; v += 64) {
    svg << "<text x=\"" << num(left + plot_w * std::min(v, 255) / 255.0) << "\" y=\""
        << num(top + plot_h + 16) << "\" text-anchor=\"middle\">" << std::min(v, 255) << "</text>\n";
  }

  const std::pair<const Histogram256*, const char*> lines[] = {{&reference, "#4e79a7"}, {&fused, "#e15759"}};
  for (const auto& [hist, color] : lines) {
    if (hist->total == 0) continue;
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"";
    for (int v = 0; v < 256; ++v) {
      const double frac = static_cast<double>(hist->bins[v]) / hist->total;
      svg << (v ? " " : "") << num(left + plot_w * v / 255.0) << "," << num(top + plot_h - plot_h * frac / ymax);
    }
    svg << "\"/>\n";
  }
  svg << "<rect x=\"" << num(left + plot_w - 120) << "\" y=\"28\" width=\"10\" height=\"10\" fill=\"#e15759\"/>"
      << "<text x=\"" << num(left + plot_w - 106) << "\" y=\"37\">fused (" << fused.total << ")</text>\n"
      << "<rect x=\"" << num(left + plot_w - 120) << "\" y=\"42\" width=\"10\" height=\"10\" fill=\"#4e79a7\"/>"
      << "<text x=\"" << num(left + plot_w - 106) << "\" y=\"51\">reference (" << reference.total << ")</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

ChartOutput render_charts(const MetricReport& report, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec || !std::filesystem::is_directory(out_dir)) {
    throw IoError("cannot create output directory '" + out_dir.string() + "'");
  }
  ChartOutput output;
  for (const auto& chart : build_charts(report, &output.notes)) {
    const auto path = out_dir / (chart.file_stem + ".svg");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << render_svg(chart);
    if (!out) throw IoError("error writing '" + path.string() + "'");
    output.files.push_back(path);
  }
  return output;
}

}  // namespace fusionqa::charts
