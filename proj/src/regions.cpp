#include "fusionqa/regions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <set>

#include "fusionqa/error.hpp"

namespace fusionqa {

std::size_t RegionSet::block_count() const {
  std::size_t n = 0;
  for (const auto& g : groups) n += g.blocks.size();
  return n;
}

std::vector<std::string> RegionSet::group_names() const {
  std::vector<std::string> names;
  for (const auto& g : groups) names.push_back(g.name);
  return names;
}

void RegionSet::validate(int width, int height) const {
  std::set<std::string> seen;
  for (const auto& g : groups) {
    if (g.blocks.empty()) throw ConfigError("region group '" + g.name + "' has no blocks");
    for (const auto& b : g.blocks) {
      if (!seen.insert(b.name).second) throw ConfigError("duplicate region name '" + b.name + "'");
      if (!b.fits(width, height)) {
        throw ConfigError("region '" + b.name + "' at (" + std::to_string(b.x0) + "," +
                          std::to_string(b.y0) + ") size " + std::to_string(b.w) + "x" +
                          std::to_string(b.h) + " is outside the " + std::to_string(width) +
                          "x" + std::to_string(height) + " image");
      }
    }
  }
}

namespace {

// Places a block of size w x h with its origin at the given fraction of the
// image, pulled back inside when the image is small.
RegionSpec anchored(std::string name, int width, int height, double fx, double fy, int w, int h) {
  RegionSpec r{std::move(name), 0, 0, w, h};
  r.x0 = std::clamp(static_cast<int>(std::lround(fx * width)), 0, std::max(width - w, 0));
  r.y0 = std::clamp(static_cast<int>(std::lround(fy * height)), 0, std::max(height - h, 0));
  return r;
}

}  // namespace

RegionSet default_region_set(int width, int height) {
  RegionSet set;
  set.groups.push_back({"b1", {anchored("b1", width, height, 0.10, 0.10, 30, 30)}});
  set.groups.push_back({"b2", {anchored("b2", width, height, 0.70, 0.65, 30, 30)}});

  static constexpr double kB3Anchors[7][2] = {{0.05, 0.45}, {0.25, 0.80}, {0.40, 0.20},
                                              {0.55, 0.50}, {0.75, 0.15}, {0.85, 0.85},
                                              {0.30, 0.55}};
  RegionGroup b3{"b3", {}};
  for (int i = 0; i < 7; ++i) {
    b3.blocks.push_back(anchored("b3_" + std::to_string(i + 1), width, height, kB3Anchors[i][0],
                                 kB3Anchors[i][1], 10, 10));
  }
  set.groups.push_back(std::move(b3));
  return set;
}

namespace {

int required_int(const nlohmann::json& entry, const char* key, std::size_t index) {
  if (!entry.contains(key)) {
    throw ConfigError("regions[" + std::to_string(index) + "]: missing \"" + key + "\"");
  }
  const auto& v = entry.at(key);
  if (!v.is_number_integer()) {
    throw ConfigError("regions[" + std::to_string(index) + "]: \"" + key + "\" must be an integer");
  }
  const auto value = v.get<long long>();
  if (value < std::numeric_limits<int>::min() || value > std::numeric_limits<int>::max()) {
    throw ConfigError("regions[" + std::to_string(index) + "]: \"" + key + "\" out of range");
  }
  return static_cast<int>(value);
}

}  // namespace

RegionSet load_region_set(const nlohmann::json& config, int width, int height) {
  if (config.is_null()) return default_region_set(width, height);
  if (!config.is_object()) throw ConfigError("region config must be a JSON object");
  if (!config.contains("regions")) return default_region_set(width, height);

  const auto& list = config.at("regions");
  if (!list.is_array()) throw ConfigError("\"regions\" must be an array");
  if (list.empty()) return default_region_set(width, height);

  RegionSet set;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto& entry = list[i];
    if (!entry.is_object()) throw ConfigError("regions[" + std::to_string(i) + "] must be an object");
    if (!entry.contains("name") || !entry.at("name").is_string() ||
        entry.at("name").get<std::string>().empty()) {
      throw ConfigError("regions[" + std::to_string(i) + "]: \"name\" must be a non-empty string");
    }
    RegionSpec spec{entry.at("name").get<std::string>(), required_int(entry, "x0", i),
                    required_int(entry, "y0", i), required_int(entry, "w", i),
                    required_int(entry, "h", i)};
    if (spec.w < 1 || spec.h < 1) {
      throw ConfigError("region '" + spec.name + "': w and h must be >= 1");
    }
    std::string group = spec.name;
    if (entry.contains("group")) {
      if (!entry.at("group").is_string() || entry.at("group").get<std::string>().empty()) {
        throw ConfigError("region '" + spec.name + "': \"group\" must be a non-empty string");
      }
      group = entry.at("group").get<std::string>();
    }
    auto it = std::find_if(set.groups.begin(), set.groups.end(),
                           [&](const RegionGroup& g) { return g.name == group; });
    if (it == set.groups.end()) {
      set.groups.push_back({group, {spec}});
    } else {
      it->blocks.push_back(spec);
    }
  }
  set.validate(width, height);
  return set;
}

nlohmann::json region_set_to_json(const RegionSet& set) {
  nlohmann::json regions = nlohmann::json::array();
  for (const auto& g : set.groups) {
    for (const auto& b : g.blocks) {
      regions.push_back({{"name", b.name}, {"x0", b.x0}, {"y0", b.y0}, {"w", b.w}, {"h", b.h},
                         {"group", g.name}});
    }
  }
  return {{"regions", regions}};
}

std::vector<RegionSpec> find_homogeneous_blocks(const Band& band, int block_w, int block_h,
                                                int count) {
  if (block_w < 1 || block_h < 1) throw InvalidArgument("block size must be positive");
  if (count < 1) throw InvalidArgument("block count must be >= 1");
  if (block_w > band.width() || block_h > band.height()) {
    throw InvalidArgument("block " + std::to_string(block_w) + "x" + std::to_string(block_h) +
                          " does not fit in " + std::to_string(band.width()) + "x" +
                          std::to_string(band.height()));
  }
  const int cols = band.width() / block_w;
  const int rows = band.height() / block_h;
  const int cells = cols * rows;
  if (count > cells) {
    throw InvalidArgument("requested " + std::to_string(count) + " blocks but the grid has only " +
                          std::to_string(cells));
  }

  // n^2 * variance, exact in integers; every cell shares n so it orders like
  // the variance itself.
  const std::int64_t n = static_cast<std::int64_t>(block_w) * block_h;
  std::vector<std::int64_t> variance(cells);
#pragma omp parallel for schedule(static)
  for (int row = 0; row < rows; ++row) {
    for (int col = 0; col < cols; ++col) {
      std::int64_t sum = 0;
      std::int64_t sq = 0;
      for (int y = row * block_h; y < (row + 1) * block_h; ++y) {
        for (int x = col * block_w; x < (col + 1) * block_w; ++x) {
          const int v = band.at(x, y);
          sum += v;
          sq += v * v;
        }
      }
      variance[row * cols + col] = sq * n - sum * sum;
    }
  }

  std::vector<int> order(cells);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return variance[a] < variance[b]; });

  std::vector<RegionSpec> out;
  for (int i = 0; i < count; ++i) {
    const int cell = order[i];
    out.push_back({"auto" + std::to_string(i + 1), (cell % cols) * block_w, (cell / cols) * block_h,
                   block_w, block_h});
  }
  return out;
}

std::vector<Intensity> pooled_pixels(const Band& band, const RegionGroup& group) {
  std::vector<Intensity> px;
  for (const auto& block : group.blocks) {
    Band sub = extract_block(band, block);
    px.insert(px.end(), sub.pixels().begin(), sub.pixels().end());
  }
  return px;
}

}  // namespace fusionqa
