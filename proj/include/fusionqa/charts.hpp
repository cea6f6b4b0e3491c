#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fusionqa/histogram.hpp"
#include "fusionqa/report.hpp"

namespace fusionqa::charts {

// A bar slot. `present` is false when the series does not apply to the
// group (PAN has no G band); a present cell without a value draws its
// marker instead of a bar.
struct Cell {
  bool present = false;
  std::optional<double> value;
  std::string marker;
};

struct Group {
  std::string label;
  std::vector<Cell> cells;  // one per chart series
};

struct Panel {
  std::string title;
  std::vector<Group> groups;
};

struct BarChart {
  std::string file_stem;
  std::string title;
  std::string y_label;
  std::vector<std::string> series;
  std::vector<Panel> panels;
};

// One chart per metric family. Families with no entries are left out and
// named in `skipped`.
std::vector<BarChart> build_charts(const MetricReport& report, std::vector<std::string>* skipped);

std::string render_svg(const BarChart& chart);

// Overlaid fused vs reference histogram as normalised polylines.
std::string render_histogram_overlay(const Histogram256& fused, const Histogram256& reference,
                                     const std::string& title);

struct ChartOutput {
  std::vector<std::filesystem::path> files;
  std::vector<std::string> notes;
};

// Writes <file_stem>.svg for every chart. Throws IoError when out_dir is not
// writable.
ChartOutput render_charts(const MetricReport& report, const std::filesystem::path& out_dir);

}  // namespace fusionqa::charts
