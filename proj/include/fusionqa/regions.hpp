#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fusionqa/raster.hpp"

namespace fusionqa {

// Blocks whose pixels are pooled into a single statistic ("b3" pools seven
// 10x10 blocks).
struct RegionGroup {
  std::string name;
  std::vector<RegionSpec> blocks;

  friend bool operator==(const RegionGroup&, const RegionGroup&) = default;
};

struct RegionSet {
  std::vector<RegionGroup> groups;

  std::size_t block_count() const;
  std::vector<std::string> group_names() const;
  // Throws ConfigError on duplicate block names, empty groups or blocks
  // outside width x height.
  void validate(int width, int height) const;

  friend bool operator==(const RegionSet&, const RegionSet&) = default;
};

// b1, b2 (30x30) and b3 (seven pooled 10x10 blocks). Positions are fixed
// fractions of the image size, clamped so every block stays inside.
RegionSet default_region_set(int width, int height);

// Accepts null, {} or {"regions": [...]} where each entry is
// {"name", "x0", "y0", "w", "h", "group"?}. "group" defaults to the name.
// Missing or empty "regions" yields default_region_set.
RegionSet load_region_set(const nlohmann::json& config, int width, int height);

nlohmann::json region_set_to_json(const RegionSet& set);

// The `count` lowest-variance cells of a block-aligned grid, ties broken by
// row then column. Returned in that order.
std::vector<RegionSpec> find_homogeneous_blocks(const Band& band, int block_w, int block_h,
                                                int count);

// Pixels of every block in the group, concatenated row-major per block.
std::vector<Intensity> pooled_pixels(const Band& band, const RegionGroup& group);

}  // namespace fusionqa
