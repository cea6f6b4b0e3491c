#include "fusionqa/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fusionqa/charts.hpp"
#include "fusionqa/error.hpp"
#include "fusionqa/image_io.hpp"
#include "fusionqa/kernels.hpp"
#include "fusionqa/report.hpp"
#include "fusionqa/synth.hpp"

namespace fusionqa::cli {

namespace fs = std::filesystem;

namespace {

struct EvaluateArgs {
  std::string pan;
  std::string ms;
  std::vector<std::string> fused;
  std::string config;
  std::string out = "fusionqa_out";
  std::string thresholds = "20,40,60,80,100";
  int hist_threshold = 20;
};

struct MetricArgs {
  std::string image;
  std::string fused;
  std::string ms;
  std::string config;
  std::vector<std::string> regions;
  std::string thresholds = "20,40,60,80,100";
  std::string out;
  int threshold = 20;
  bool whole = false;
};

struct FixtureArgs {
  std::string out;
  synth::SceneParams scene;
};

std::vector<int> parse_thresholds(const std::string& text) {
  std::vector<int> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      values.push_back(v);
    } catch (const std::exception&) {
      throw ConfigError("threshold '" + item + "' is not an integer");
    }
  }
  try {
    validate_thresholds(values);
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  return values;
}

nlohmann::json read_config(const std::string& path) {
  if (path.empty()) return nullptr;
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
}

RegionSpec parse_region(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("region '" + text + "' must look like name=x0,y0,w,h");
  }
  RegionSpec spec;
  spec.name = text.substr(0, eq);
  std::stringstream ss(text.substr(eq + 1));
  std::string item;
  std::vector<int> v;
  while (std::getline(ss, item, ',')) {
    try {
      v.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw ConfigError("region '" + text + "': '" + item + "' is not an integer");
    }
  }
  if (v.size() != 4) throw ConfigError("region '" + text + "' must look like name=x0,y0,w,h");
  spec.x0 = v[0];
  spec.y0 = v[1];
  spec.w = v[2];
  spec.h = v[3];
  return spec;
}

RegionSet resolve_regions(const MetricArgs& args, int width, int height) {
  if (!args.regions.empty()) {
    RegionSet set;
    for (const auto& text : args.regions) {
      RegionSpec spec = parse_region(text);
      set.groups.push_back({spec.name, {spec}});
    }
    set.validate(width, height);
    return set;
  }
  return load_region_set(read_config(args.config), width, height);
}

std::string stem_label(const std::string& path) { return fs::path(path).stem().string(); }

std::string safe_name(const std::string& text) {
  std::string out;
  for (char c : text) out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  return out;
}

// "label=path" or a bare path labelled by its file stem.
std::pair<std::string, std::string> split_labeled(const std::string& arg) {
  const auto eq = arg.find('=');
  if (eq == std::string::npos) return {stem_label(arg), arg};
  if (eq == 0 || eq + 1 == arg.size()) throw ConfigError("malformed --fused '" + arg + "'");
  return {arg.substr(0, eq), arg.substr(eq + 1)};
}

// Exact integer factor taking `small` to width x height.
int upsample_factor(const MultibandImage& small, int width, int height) {
  if (small.width() == width && small.height() == height) return 1;
  if (small.width() > width || width % small.width() != 0 || height % small.height() != 0 ||
      width / small.width() != height / small.height()) {
    throw DimensionError("MS is " + std::to_string(small.width()) + "x" +
                         std::to_string(small.height()) + ", which is not an integer downscale of " +
                         std::to_string(width) + "x" + std::to_string(height));
  }
  return width / small.width();
}

std::string timestamp() {
  std::time_t t;
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  } else {
    t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw IoError("error writing '" + path.string() + "'");
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create directory '" + dir.string() + "'");
}

// A loaded image as the list of bands the single-metric commands iterate.
struct LoadedImage {
  std::string label;
  std::vector<std::pair<BandId, Band>> bands;
};

LoadedImage load_any(const std::string& path) {
  LoadedImage img{stem_label(path), {}};
  auto any = io::read_image(path, img.label);
  if (auto* band = std::get_if<Band>(&any)) {
    img.bands.emplace_back(BandId::PAN, std::move(*band));
  } else {
    const auto& rgb = std::get<MultibandImage>(any);
    for (BandId id : kRgb) img.bands.emplace_back(id, rgb.band(id));
  }
  return img;
}

std::pair<MultibandImage, MultibandImage> load_fused_and_ms(const MetricArgs& args) {
  if (args.fused.empty() || args.ms.empty()) throw ConfigError("--fused and --ms are both required");
  auto [label, path] = split_labeled(args.fused);
  MultibandImage fused = io::read_rgb(path, label);
  MultibandImage ms = io::read_rgb(args.ms, "MS");
  ms = upsample_nearest(ms, upsample_factor(ms, fused.width(), fused.height()));
  return {std::move(fused), std::move(ms)};
}

int run_evaluate(const EvaluateArgs& args, std::ostream& out) {
  EvaluateOptions options;
  options.thresholds = parse_thresholds(args.thresholds);
  options.histogram_threshold = args.hist_threshold;

  Band pan = io::read_band(args.pan);
  MultibandImage ms = io::read_rgb(args.ms, "MS");
  const int factor = upsample_factor(ms, pan.width(), pan.height());
  ms = upsample_nearest(ms, factor);

  std::vector<InputEntry> manifest = {
      {"pan", "PAN", args.pan, pan.width(), pan.height(), 1},
      {"ms", "MS", args.ms, ms.width(), ms.height(), factor}};
  std::vector<MultibandImage> fused;
  for (const auto& arg : args.fused) {
    auto [label, path] = split_labeled(arg);
    fused.push_back(io::read_rgb(path, label));
    manifest.push_back({"fused", label, path, fused.back().width(), fused.back().height(), 1});
  }
  options.regions = load_region_set(read_config(args.config), pan.width(), pan.height());

  MetricReport report = evaluate(pan, ms, fused, options);
  report.inputs = std::move(manifest);
  report.generated_at = timestamp();

  const fs::path dir(args.out);
  ensure_dir(dir);
  charts::ChartOutput charts = charts::render_charts(report, dir);
  report.notes.insert(report.notes.end(), charts.notes.begin(), charts.notes.end());

  const fs::path hist_dir = dir / "histograms";
  ensure_dir(hist_dir);
  for (const auto& h : report.histograms) {
    const std::string name = safe_name(h.method) + "_" + safe_name(h.scope) + "_" +
                             std::string(to_string(h.band)) + ".svg";
    write_text(hist_dir / name,
               charts::render_histogram_overlay(h.fused, h.ms,
                                                h.method + " vs " + h.reference + ", band " +
                                                    std::string(to_string(h.band)) + ", " + h.scope));
  }

  write_text(dir / "report.json", to_json(report).dump(2) + "\n");
  write_text(dir / "report.csv", to_csv(report));

  out << "wrote " << (dir / "report.json").string() << "\n";
  out << "wrote " << (dir / "report.csv").string() << "\n";
  for (const auto& f : charts.files) out << "wrote " << f.string() << "\n";
  for (const auto& note : report.notes) out << "note: " << note << "\n";
  return kOk;
}

int run_edges(const MetricArgs& args, std::ostream& out) {
  const auto thresholds = parse_thresholds(args.thresholds);
  LoadedImage img = load_any(args.image);
  MetricReport report;
  for (const auto& [id, band] : img.bands) {
    const auto sweep = threshold_sweep(band, thresholds, img.label);
    for (const auto& e : sweep) {
      report.edge_rates.push_back({img.label, id, e.threshold, e.mask.edge_count, e.mask.size(), e.rate});
      if (!args.out.empty()) {
        ensure_dir(args.out);
        io::write_pgm(fs::path(args.out) / (safe_name(img.label) + "_" + std::string(to_string(id)) +
                                            "_t" + std::to_string(e.threshold) + ".pgm"),
                      mask_to_band(e.mask));
      }
    }
  }
  out << to_csv(report);
  return kOk;
}

int run_csa(const MetricArgs& args, std::ostream& out) {
  const auto thresholds = parse_thresholds(args.thresholds);
  LoadedImage img = load_any(args.image);
  const Band& first = img.bands.front().second;
  RegionSet regions;
  if (!args.regions.empty() || !args.config.empty()) {
    regions = resolve_regions(args, first.width(), first.height());
  }
  MetricReport report;
  for (const auto& [id, band] : img.bands) {
    auto blocks = block_contrast_report(ContrastMetric::Csa, band, id, img.label, regions, true);
    report.contrast.insert(report.contrast.end(), blocks.begin(), blocks.end());
    auto edges = csa_report(band, id, img.label, threshold_sweep(band, thresholds, img.label));
    report.contrast.insert(report.contrast.end(), edges.begin(), edges.end());
  }
  out << to_csv(report);
  return kOk;
}

int run_mtf(const MetricArgs& args, std::ostream& out) {
  LoadedImage img = load_any(args.image);
  const Band& first = img.bands.front().second;
  RegionSet regions;
  if (!args.regions.empty() || !args.config.empty()) {
    regions = resolve_regions(args, first.width(), first.height());
  }
  MetricReport report;
  for (const auto& [id, band] : img.bands) {
    auto part = block_contrast_report(ContrastMetric::Michelson, band, id, img.label, regions, true);
    report.contrast.insert(report.contrast.end(), part.begin(), part.end());
  }
  out << to_csv(report);
  return kOk;
}

int run_snr(const MetricArgs& args, std::ostream& out) {
  MetricReport report;
  if (args.whole) {
    auto [fused, ms] = load_fused_and_ms(args);
    report.snr = snr_whole_report(fused, ms);
  } else {
    if (args.image.empty()) throw ConfigError("snr needs --image (or --whole with --fused/--ms)");
    MultibandImage img = io::read_rgb(args.image, stem_label(args.image));
    report.snr = snr_region_report(img, resolve_regions(args, img.width(), img.height()));
  }
  out << to_csv(report);
  return kOk;
}

void write_histogram_csv(const fs::path& path, const Histogram256& h) {
  std::ostringstream csv;
  csv << "intensity,count\n";
  for (int v = 0; v < 256; ++v) csv << v << ',' << h.bins[v] << '\n';
  write_text(path, csv.str());
}

int run_hist(const MetricArgs& args, std::ostream& out) {
  auto [fused, ms] = load_fused_and_ms(args);
  if (args.threshold < 0 || args.threshold > 255) throw ConfigError("--threshold must lie in [0, 255]");
  MetricReport report;
  for (const auto& suite : {edge_histogram_suite(fused, ms, args.threshold), whole_histogram_suite(fused, ms)}) {
    for (const auto& pair : suite.pairs) {
      report.histograms.push_back({suite.method, suite.reference, pair.band, suite.scope,
                                   suite.threshold, pair.delta, pair.marker, pair.fused, pair.reference});
      if (args.out.empty()) continue;
      ensure_dir(args.out);
      const std::string base = safe_name(suite.scope) + "_" + std::string(to_string(pair.band));
      write_histogram_csv(fs::path(args.out) / (safe_name(fused.label()) + "_" + base + ".csv"), pair.fused);
      write_histogram_csv(fs::path(args.out) / ("MS_" + base + ".csv"), pair.reference);
      write_text(fs::path(args.out) / ("overlay_" + base + ".svg"),
                 charts::render_histogram_overlay(pair.fused, pair.reference,
                                                  fused.label() + " vs MS, band " +
                                                      std::string(to_string(pair.band)) + ", " + suite.scope));
    }
  }
  out << to_csv(report);
  return kOk;
}

int run_fixtures(const FixtureArgs& args, std::ostream& out) {
  const fs::path dir(args.out);
  ensure_dir(dir);
  const synth::Scene scene = synth::generate_scene(args.scene);
  io::write_pgm(dir / "pan.pgm", scene.pan);
  io::write_ppm(dir / "ms.ppm", scene.ms_lowres);

  struct Variant {
    const char* name;
    double gain;
    std::array<int, 3> shift;
  };
  const Variant variants[] = {{"fused_hf0", 0.0, {0, 0, 0}},
                              {"fused_hf1", args.scene.hf_gain, {0, 0, 0}},
                              {"fused_shift", args.scene.hf_gain, args.scene.spectral_shift}};
  for (const auto& v : variants) {
    auto fused = synth::simulate_fusion(scene.pan, scene.ms, v.gain, v.shift, v.name);
    io::write_ppm(dir / (std::string(v.name) + ".ppm"), fused);
  }
  out << "wrote pan.pgm, ms.ppm, fused_hf0.ppm, fused_hf1.ppm, fused_shift.ppm to " << dir.string() << "\n";
  return kOk;
}

void add_region_options(CLI::App* cmd, MetricArgs& args) {
  cmd->add_option("--config", args.config, "Region configuration JSON");
  cmd->add_option("--region", args.regions, "Region as name=x0,y0,w,h (repeatable)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  kernels::apply_worker_cap();

  CLI::App app{"Spatial and spectral quality metrics for pan-sharpened images", "fusionqa"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  EvaluateArgs eval;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Full metric suite, report files and charts");
  evaluate_cmd->add_option("--pan", eval.pan, "Panchromatic image (P5 / gray PNG)")->required();
  evaluate_cmd->add_option("--ms", eval.ms, "Multispectral image (P6 / RGB PNG), native or upsampled")->required();
  evaluate_cmd->add_option("--fused", eval.fused, "Fused image as label=path (repeatable)")->required();
  evaluate_cmd->add_option("--config", eval.config, "Region configuration JSON");
  evaluate_cmd->add_option("--out", eval.out, "Output directory")->capture_default_str();
  evaluate_cmd->add_option("--thresholds", eval.thresholds, "Sobel thresholds")->capture_default_str();
  evaluate_cmd->add_option("--hist-threshold", eval.hist_threshold, "Sobel threshold for edge histograms")
      ->capture_default_str();

  MetricArgs metric;
  auto* edges_cmd = app.add_subcommand("edges", "Sobel edge rates per threshold");
  edges_cmd->add_option("--image", metric.image, "Input image")->required();
  edges_cmd->add_option("--thresholds", metric.thresholds)->capture_default_str();
  edges_cmd->add_option("--out", metric.out, "Directory for P5 edge masks");

  auto* csa_cmd = app.add_subcommand("csa", "CSA over whole image, regions, edges and homogeneous pixels");
  csa_cmd->add_option("--image", metric.image, "Input image")->required();
  csa_cmd->add_option("--thresholds", metric.thresholds)->capture_default_str();
  add_region_options(csa_cmd, metric);

  auto* mtf_cmd = app.add_subcommand("mtf", "Michelson contrast over the whole image and regions");
  mtf_cmd->add_option("--image", metric.image, "Input image")->required();
  add_region_options(mtf_cmd, metric);

  auto* snr_cmd = app.add_subcommand("snr", "Region SNR, or whole-image SNR with --whole");
  snr_cmd->add_option("--image", metric.image, "RGB image for region SNR");
  snr_cmd->add_flag("--whole", metric.whole, "Whole-image SNR of --fused against --ms");
  snr_cmd->add_option("--fused", metric.fused, "Fused image (label=path or path)");
  snr_cmd->add_option("--ms", metric.ms, "Reference multispectral image");
  add_region_options(snr_cmd, metric);

  auto* hist_cmd = app.add_subcommand("hist", "Edge and whole-image histogram differences");
  hist_cmd->add_option("--fused", metric.fused, "Fused image (label=path or path)")->required();
  hist_cmd->add_option("--ms", metric.ms, "Reference multispectral image")->required();
  hist_cmd->add_option("--threshold", metric.threshold, "Sobel threshold")->capture_default_str();
  hist_cmd->add_option("--out", metric.out, "Directory for histogram CSV and SVG files");

  FixtureArgs fix;
  auto* fixtures_cmd = app.add_subcommand("fixtures", "Write synthetic PAN, MS and fused images");
  fixtures_cmd->add_option("--out", fix.out, "Output directory")->required();
  fixtures_cmd->add_option("--seed", fix.scene.seed)->capture_default_str();
  fixtures_cmd->add_option("--width", fix.scene.width)->capture_default_str();
  fixtures_cmd->add_option("--height", fix.scene.height)->capture_default_str();
  fixtures_cmd->add_option("--density", fix.scene.detail_density)->capture_default_str();
  fixtures_cmd->add_option("--noise", fix.scene.noise_amplitude)->capture_default_str();
  fixtures_cmd->add_option("--blur", fix.scene.blur_radius)->capture_default_str();
  fixtures_cmd->add_option("--hf-gain", fix.scene.hf_gain)->capture_default_str();
  fix.scene.spectral_shift = {0, 0, 30};
  fixtures_cmd->add_option("--shift", fix.scene.spectral_shift, "R G B offsets for fused_shift")
      ->expected(3)
      ->capture_default_str();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "fusionqa: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  try {
    if (evaluate_cmd->parsed()) return run_evaluate(eval, out);
    if (edges_cmd->parsed()) return run_edges(metric, out);
    if (csa_cmd->parsed()) return run_csa(metric, out);
    if (mtf_cmd->parsed()) return run_mtf(metric, out);
    if (snr_cmd->parsed()) return run_snr(metric, out);
    if (hist_cmd->parsed()) return run_hist(metric, out);
    if (fixtures_cmd->parsed()) return run_fixtures(fix, out);
  } catch (const IoError& e) {
    err << "fusionqa: unreadable input: " << e.what() << "\n";
    return kUnreadable;
  } catch (const DimensionError& e) {
    err << "fusionqa: dimension mismatch: " << e.what() << "\n";
    return kDimensionMismatch;
  } catch (const ConfigError& e) {
    err << "fusionqa: bad configuration: " << e.what() << "\n";
    return kBadConfig;
  } catch (const InvalidArgument& e) {
    err << "fusionqa: bad configuration: " << e.what() << "\n";
    return kBadConfig;
  } catch (const BoundsError& e) {
    err << "fusionqa: bad configuration: " << e.what() << "\n";
    return kBadConfig;
  } catch (const Error& e) {
    err << "fusionqa: " << e.what() << "\n";
    return kFailure;
  }
  err << app.help();
  return kUsage;
}

}  // namespace fusionqa::cli
