#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fusionqa/error.hpp"
#include "fusionqa/raster.hpp"
#include "fusionqa/reference.hpp"
#include "generators.hpp"

using namespace fusionqa;
using fusionqa::testing::Gen;

TEST_CASE("band construction validates shape") {
  CHECK_THROWS_AS(Band(0, 3), InvalidArgument);
  CHECK_THROWS_AS(Band(2, 2, std::vector<Intensity>{1, 2, 3}), DimensionError);
  Band b(3, 2, std::vector<Intensity>{1, 2, 3, 4, 5, 6});
  CHECK(b.at(2, 1) == 6);
  CHECK(b.row(1)[0] == 4);
}

TEST_CASE("multiband image requires equal band sizes") {
  CHECK_THROWS_AS(MultibandImage(Band(2, 2), Band(2, 2), Band(3, 2), "x"), DimensionError);
  MultibandImage img(Band(2, 2, 1), Band(2, 2, 2), Band(2, 2, 3), "MS");
  CHECK(img.band(BandId::B).at(0, 0) == 3);
  CHECK_THROWS_AS(img.band(BandId::L), InvalidArgument);
}

TEST_CASE("to_intensity rounds half up and clamps") {
  CHECK(to_intensity(2.5) == 3);
  CHECK(to_intensity(2.49) == 2);
  CHECK(to_intensity(-7.0) == 0);
  CHECK(to_intensity(300.0) == 255);
}

TEST_CASE("upsample_nearest") {
  SUBCASE("constant replication") {
    Band out = upsample_nearest(Band(1, 1, 7), 3);
    CHECK(out.width() == 3);
    CHECK(out.height() == 3);
    CHECK(std::all_of(out.pixels().begin(), out.pixels().end(), [](Intensity v) { return v == 7; }));
  }
  SUBCASE("block replication") {
    Band out = upsample_nearest(Band(2, 2, std::vector<Intensity>{1, 2, 3, 4}), 2);
    const std::vector<Intensity> expected = {1, 1, 2, 2, 1, 1, 2, 2, 3, 3, 4, 4, 3, 3, 4, 4};
    CHECK(std::equal(out.pixels().begin(), out.pixels().end(), expected.begin(), expected.end()));
  }
  SUBCASE("MS grid to PAN grid") {
    Band out = upsample_nearest(Band(120, 105, 9), 5);
    CHECK(out.width() == 600);
    CHECK(out.height() == 525);
  }
  SUBCASE("factor zero rejected") { CHECK_THROWS_AS(upsample_nearest(Band(2, 2), 0), InvalidArgument); }

  SUBCASE("composition of factors, pixel exact") {
    Gen gen(11);
    for (int trial = 0; trial < 20; ++trial) {
      Band b = gen.band(gen.integer(1, 9), gen.integer(1, 9));
      const int a = gen.integer(1, 4);
      const int c = gen.integer(1, 4);
      CHECK(upsample_nearest(upsample_nearest(b, a), c) == upsample_nearest(b, a * c));
      CHECK(upsample_nearest(b, a) == reference::upsample_nearest(b, a));
    }
  }
}

TEST_CASE("l_component is the rounded mean of R, G, B") {
  auto pixel = [](Intensity r, Intensity g, Intensity b) {
    return l_component(MultibandImage(Band(1, 1, r), Band(1, 1, g), Band(1, 1, b), "p")).at(0, 0);
  };
  CHECK(pixel(0, 0, 255) == 85);
  CHECK(pixel(10, 20, 30) == 20);
  CHECK(pixel(0, 0, 2) == 1);  // 0.667
  CHECK(pixel(0, 0, 1) == 0);  // 0.333
  for (int v = 0; v < 256; ++v) {
    const auto i = static_cast<Intensity>(v);
    CHECK(pixel(i, i, i) == i);
  }

  Gen gen(3);
  Band gray = gen.band(13, 7);
  CHECK(l_component(MultibandImage(gray, gray, gray, "gray")) == gray);
}

TEST_CASE("extract_block") {
  Gen gen(5);
  Band band = gen.band(17, 11);
  SUBCASE("full image is identity") {
    CHECK(extract_block(band, {"all", 0, 0, 17, 11}) == band);
  }
  SUBCASE("single pixel") {
    Band one = extract_block(Band(2, 1, std::vector<Intensity>{9, 4}), {"p", 0, 0, 1, 1});
    CHECK(one.size() == 1);
    CHECK(one.at(0, 0) == 9);
  }
  SUBCASE("30x30 block from a 600x525 band") {
    Band big(600, 525, 3);
    CHECK(extract_block(big, {"b1", 60, 52, 30, 30}).size() == 900);
  }
  SUBCASE("values preserved at their offsets") {
    for (int t = 0; t < 50; ++t) {
      RegionSpec r{"r", gen.integer(0, 16), gen.integer(0, 10), 1, 1};
      r.w = gen.integer(1, 17 - r.x0);
      r.h = gen.integer(1, 11 - r.y0);
      Band sub = extract_block(band, r);
      for (int y = 0; y < r.h; ++y)
        for (int x = 0; x < r.w; ++x) REQUIRE(sub.at(x, y) == band.at(r.x0 + x, r.y0 + y));
    }
  }
  SUBCASE("out of bounds names the region") {
    try {
      extract_block(band, {"edgey", 10, 0, 8, 2});
      FAIL("expected BoundsError");
    } catch (const BoundsError& e) {
      CHECK(std::string(e.what()).find("edgey") != std::string::npos);
    }
    CHECK_THROWS_AS(extract_block(band, {"neg", -1, 0, 1, 1}), BoundsError);
  }
}

TEST_CASE("pixel_stats") {
  SUBCASE("constant") {
    const std::vector<Intensity> px = {5, 5, 5, 5};
    PixelStats s = pixel_stats(px);
    CHECK(s.mean == 5.0);
    CHECK(s.std_dev == 0.0);
    CHECK(s.min == 5);
    CHECK(s.max == 5);
    CHECK(s.n == 4);
  }
  SUBCASE("two point") {
    const std::vector<Intensity> px = {0, 255};
    PixelStats s = pixel_stats(px);
    CHECK(s.mean == 127.5);
    CHECK(s.std_dev == 127.5);
  }
  SUBCASE("three point, population divisor") {
    const std::vector<Intensity> px = {50, 100, 150};
    PixelStats s = pixel_stats(px);
    CHECK(s.mean == doctest::Approx(100.0).epsilon(1e-15));
    CHECK(s.std_dev == doctest::Approx(40.824829046386306).epsilon(1e-12));
  }
  SUBCASE("empty") {
    CHECK_THROWS_AS(pixel_stats(std::span<const Intensity>{}), EmptyRegionError);
    CHECK_THROWS_AS(pixel_stats(IntensityCounts{}), EmptyRegionError);
  }
  SUBCASE("matches the two-pass oracle on random blocks") {
    Gen gen(17);
    for (int t = 0; t < 100; ++t) {
      const int lo = gen.integer(0, 200);
      auto px = gen.population(static_cast<std::size_t>(gen.integer(1, 2000)), lo, gen.integer(lo, 255));
      PixelStats s = pixel_stats(px);
      PixelStats o = reference::pixel_stats(px);
      CHECK(fusionqa::testing::close_rel(s.mean, o.mean, 1e-12));
      CHECK(fusionqa::testing::close_rel(s.std_dev * s.std_dev, o.std_dev * o.std_dev, 1e-9));
      CHECK(s.min == o.min);
      CHECK(s.max == o.max);
      CHECK(s.min <= s.mean);
      CHECK(s.mean <= s.max);
    }
  }
}
