#include <doctest.h>

#include <cmath>

#include "fusionqa/contrast.hpp"
#include "fusionqa/error.hpp"
#include "fusionqa/reference.hpp"
#include "fusionqa/snr.hpp"
#include "generators.hpp"

using namespace fusionqa;
using fusionqa::testing::Gen;

TEST_CASE("snr_region") {
  const std::vector<Intensity> three = {50, 100, 150};
  const std::vector<Intensity> two = {0, 255};
  CHECK(snr_region(three) == doctest::Approx(2.449489742783178).epsilon(1e-12));
  CHECK(snr_region(two) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(snr_region(std::vector<Intensity>(9, 42)), ZeroDeviationError);
  CHECK_THROWS_AS(snr_region(std::span<const Intensity>{}), EmptyRegionError);
}

TEST_CASE("snr_region is the reciprocal of csa and scale invariant") {
  Gen gen(61);
  for (int t = 0; t < 300; ++t) {
    auto px = gen.population(static_cast<std::size_t>(gen.integer(2, 400)), 1, 63);
    if (std::all_of(px.begin(), px.end(), [&](Intensity v) { return v == px[0]; })) continue;
    CHECK(std::abs(snr_region(px) * csa(px) - 1.0) <= 1e-12);
    std::vector<Intensity> scaled(px.size());
    for (std::size_t i = 0; i < px.size(); ++i) scaled[i] = static_cast<Intensity>(px[i] * 4);
    CHECK(std::abs(snr_region(scaled) - snr_region(px)) <= 1e-9 * snr_region(px));
  }
}

TEST_CASE("snr_whole") {
  SUBCASE("2x2 example") {
    Band f(2, 2, std::vector<Intensity>{10, 20, 30, 40});
    Band m(2, 2, std::vector<Intensity>{12, 18, 30, 44});
    // sum F^2 = 3000, sum (F-M)^2 = 4 + 4 + 0 + 16 = 24
    CHECK(snr_whole(f, m) == doctest::Approx(std::sqrt(3000.0 / 24.0)).epsilon(1e-12));
  }
  SUBCASE("uniform offset") {
    Band f(4, 4, 110);
    Band m(4, 4, 100);
    CHECK(snr_whole(f, m) == doctest::Approx(11.0).epsilon(1e-12));
  }
  SUBCASE("identical and mismatched") {
    Band a(3, 3, 9);
    CHECK_THROWS_AS(snr_whole(a, a), IdenticalImagesError);
    CHECK_THROWS_AS(snr_whole(a, Band(3, 4, 9)), DimensionError);
  }
  SUBCASE("strictly decreases as fused drifts from reference") {
    Gen gen(67);
    for (int t = 0; t < 40; ++t) {
      Band m = gen.band(16, 12, 40, 200);
      Band noise = gen.band(16, 12, 0, 20);
      double prev = INFINITY;
      for (int alpha = 1; alpha <= 2; ++alpha) {
        std::vector<Intensity> px(m.size());
        for (std::size_t i = 0; i < px.size(); ++i)
          px[i] = static_cast<Intensity>(m.pixels()[i] + alpha * noise.pixels()[i]);
        Band f(16, 12, px);
        if (f == m) break;
        const double v = snr_whole(f, m);
        CHECK(v < prev);
        prev = v;
      }
    }
  }
  SUBCASE("matches the double-precision reference") {
    Gen gen(71);
    for (int t = 0; t < 50; ++t) {
      Band f = gen.band(31, 17);
      Band m = gen.band(31, 17);
      if (f == m) continue;
      CHECK(fusionqa::testing::close_rel(snr_whole(f, m), reference::snr_whole(f, m), 1e-12));
    }
  }
}

TEST_CASE("snr reports") {
  Gen gen(73);
  MultibandImage img = gen.image(100, 80, "F");
  RegionSet regions = default_region_set(100, 80);
  SUBCASE("region SNR per band per group") {
    auto results = snr_region_report(img, regions);
    REQUIRE(results.size() == 9);
    CHECK(results[0].band == BandId::R);
    CHECK(results[0].scope == "b1");
    CHECK(results[2].scope == "b3");
    CHECK(*results[2].value ==
          doctest::Approx(snr_region(pooled_pixels(img.r(), regions.groups[2]))).epsilon(1e-15));
  }
  SUBCASE("constant region yields a marker") {
    MultibandImage flat(Band(100, 80, 7), Band(100, 80, 7), Band(100, 80, 7), "flat");
    for (const auto& r : snr_region_report(flat, regions)) {
      CHECK_FALSE(r.value.has_value());
      CHECK(r.marker == marker::kConstantRegion);
    }
  }
  SUBCASE("whole SNR against MS, identical bands marked") {
    MultibandImage ms(img.r(), img.g(), Band(100, 80, 3), "MS");
    auto results = snr_whole_report(img, ms);
    REQUIRE(results.size() == 3);
    CHECK(results[0].marker == marker::kIdenticalImages);
    CHECK(results[1].marker == marker::kIdenticalImages);
    CHECK(results[2].value.has_value());
    CHECK(results[2].reference == "MS");
    CHECK(results[2].variant == SnrVariant::WholeB);
  }
}
