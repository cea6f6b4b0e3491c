#include <doctest.h>

#include "fusionqa/error.hpp"
#include "fusionqa/regions.hpp"
#include "generators.hpp"

using namespace fusionqa;
using fusionqa::testing::Gen;
using nlohmann::json;

TEST_CASE("default region set") {
  for (auto [w, h] : {std::pair{600, 525}, std::pair{100, 80}, std::pair{40, 40}}) {
    RegionSet set = default_region_set(w, h);
    CHECK(set.block_count() == 9);
    CHECK(set.group_names() == std::vector<std::string>{"b1", "b2", "b3"});
    CHECK(set.groups[0].blocks[0].w == 30);
    CHECK(set.groups[2].blocks.size() == 7);
    for (const auto& b : set.groups[2].blocks) {
      CHECK(b.w == 10);
      CHECK(b.h == 10);
    }
    CHECK_NOTHROW(set.validate(w, h));
  }
}

TEST_CASE("load_region_set") {
  SUBCASE("empty config falls back to defaults") {
    CHECK(load_region_set(json(), 100, 80) == default_region_set(100, 80));
    CHECK(load_region_set(json::object(), 100, 80) == default_region_set(100, 80));
    CHECK(load_region_set(json{{"regions", json::array()}}, 100, 80) == default_region_set(100, 80));
  }
  SUBCASE("groups pool entries sharing a name") {
    json cfg = {{"regions",
                 {{{"name", "a"}, {"x0", 0}, {"y0", 0}, {"w", 5}, {"h", 5}},
                  {{"name", "p1"}, {"group", "pool"}, {"x0", 10}, {"y0", 0}, {"w", 2}, {"h", 2}},
                  {{"name", "p2"}, {"group", "pool"}, {"x0", 20}, {"y0", 0}, {"w", 2}, {"h", 2}}}}};
    RegionSet set = load_region_set(cfg, 30, 30);
    REQUIRE(set.groups.size() == 2);
    CHECK(set.groups[1].name == "pool");
    CHECK(set.groups[1].blocks.size() == 2);
    CHECK(load_region_set(region_set_to_json(set), 30, 30) == set);
  }
  SUBCASE("bad configs") {
    json neg = {{"regions", {{{"name", "n"}, {"x0", -1}, {"y0", 0}, {"w", 5}, {"h", 5}}}}};
    json wide = {{"regions", {{{"name", "n"}, {"x0", 28}, {"y0", 0}, {"w", 5}, {"h", 5}}}}};
    json dup = {{"regions",
                 {{{"name", "d"}, {"x0", 0}, {"y0", 0}, {"w", 5}, {"h", 5}},
                  {{"name", "d"}, {"x0", 5}, {"y0", 0}, {"w", 5}, {"h", 5}}}}};
    json missing = {{"regions", {{{"name", "m"}, {"x0", 0}, {"w", 5}, {"h", 5}}}}};
    json typed = {{"regions", {{{"name", "t"}, {"x0", "zero"}, {"y0", 0}, {"w", 5}, {"h", 5}}}}};
    CHECK_THROWS_AS(load_region_set(neg, 30, 30), ConfigError);
    CHECK_THROWS_AS(load_region_set(wide, 30, 30), ConfigError);
    CHECK_THROWS_AS(load_region_set(dup, 30, 30), ConfigError);
    CHECK_THROWS_AS(load_region_set(missing, 30, 30), ConfigError);
    CHECK_THROWS_AS(load_region_set(typed, 30, 30), ConfigError);
    CHECK_THROWS_AS(load_region_set(json::array(), 30, 30), ConfigError);
  }
}

TEST_CASE("find_homogeneous_blocks") {
  SUBCASE("constant image: grid order") {
    auto blocks = find_homogeneous_blocks(Band(40, 40, 100), 10, 10, 3);
    REQUIRE(blocks.size() == 3);
    CHECK(blocks[0].x0 == 0);
    CHECK(blocks[1].x0 == 10);
    CHECK(blocks[2].x0 == 20);
    CHECK(blocks[0].name == "auto1");
  }
  SUBCASE("the flat quadrant wins") {
    Gen gen(97);
    Band noisy = gen.band(40, 40);
    std::vector<Intensity> px(noisy.pixels().begin(), noisy.pixels().end());
    for (int y = 20; y < 40; ++y)
      for (int x = 20; x < 40; ++x) px[y * 40 + x] = 77;
    auto blocks = find_homogeneous_blocks(Band(40, 40, px), 10, 10, 4);
    for (const auto& b : blocks) {
      CHECK(b.x0 >= 20);
      CHECK(b.y0 >= 20);
    }
  }
  SUBCASE("bad requests") {
    CHECK_THROWS_AS(find_homogeneous_blocks(Band(40, 40), 10, 10, 17), InvalidArgument);
    CHECK_THROWS_AS(find_homogeneous_blocks(Band(40, 40), 0, 10, 1), InvalidArgument);
  }
}

TEST_CASE("pooled_pixels concatenates blocks") {
  Band b(4, 1, std::vector<Intensity>{1, 2, 3, 4});
  RegionGroup g{"g", {{"x", 0, 0, 1, 1}, {"y", 3, 0, 1, 1}}};
  CHECK(pooled_pixels(b, g) == std::vector<Intensity>{1, 4});
}
