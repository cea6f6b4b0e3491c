#include <doctest.h>

#include <cmath>

#include "fusionqa/error.hpp"
#include "fusionqa/histogram.hpp"
#include "fusionqa/reference.hpp"
#include "fusionqa/synth.hpp"
#include "generators.hpp"

using namespace fusionqa;
using fusionqa::testing::Gen;

TEST_CASE("build_histogram") {
  Band b(2, 2, std::vector<Intensity>{0, 0, 1, 255});
  Histogram256 h = build_histogram(b);
  CHECK(h.bins[0] == 2);
  CHECK(h.bins[1] == 1);
  CHECK(h.bins[255] == 1);
  CHECK(h.total == 4);

  Band big(600, 525, 9);
  CHECK(build_histogram(big).total == 315000);

  Gen gen(79);
  for (int t = 0; t < 20; ++t) {
    Band r = gen.band(37, 23);
    CHECK(build_histogram(r).bins == reference::histogram(r));
  }
}

TEST_CASE("masked histogram") {
  Band b(2, 2, std::vector<Intensity>{5, 6, 7, 8});
  EdgeMask m{2, 2, {1, 0, 0, 1}, 20, "", 2};
  Histogram256 h = build_histogram(b, m);
  CHECK(h.total == 2);
  CHECK(h.bins[5] == 1);
  CHECK(h.bins[8] == 1);

  EdgeMask wrong{3, 1, {1, 1, 1}, 20, "", 3};
  CHECK_THROWS_AS(build_histogram(b, wrong), DimensionError);
}

TEST_CASE("edge plus homogeneous equals whole") {
  Gen gen(83);
  for (int t = 0; t < 20; ++t) {
    Band b = gen.blocky_band(40, 30);
    for (const auto& entry : threshold_sweep(b, kDefaultThresholds)) {
      EdgeMask inverse = entry.mask;
      for (auto& l : inverse.labels) l = l ? 0 : 1;
      inverse.edge_count = inverse.size() - entry.mask.edge_count;
      const auto edges = build_histogram(b, entry.mask);
      const auto homog = build_histogram(b, inverse);
      const auto whole = build_histogram(b);
      for (int i = 0; i < 256; ++i) REQUIRE(edges.bins[i] + homog.bins[i] == whole.bins[i]);
      CHECK(edges.total == entry.mask.edge_count);
    }
  }
}

TEST_CASE("histogram_delta") {
  auto from = [](std::vector<Intensity> px) {
    const int n = static_cast<int>(px.size());
    return build_histogram(Band(n, 1, std::move(px)));
  };
  CHECK(histogram_delta(from({1, 2, 3}), from({3, 2, 1})) == 0.0);
  CHECK(histogram_delta(from({0, 0}), from({255})) == 1.0);
  CHECK(histogram_delta(from({0, 1}), from({0, 2})) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(histogram_delta(Histogram256{}, from({1})), EmptyHistogramError);

  Gen gen(89);
  for (int t = 0; t < 200; ++t) {
    auto a = from(gen.population(static_cast<std::size_t>(gen.integer(1, 300))));
    auto b = from(gen.population(static_cast<std::size_t>(gen.integer(1, 300)), 0, 120));
    auto c = from(gen.population(static_cast<std::size_t>(gen.integer(1, 300)), 100, 255));
    const double ab = histogram_delta(a, b);
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0);
    CHECK(ab == histogram_delta(b, a));
    CHECK(histogram_delta(a, a) == 0.0);
    CHECK(histogram_delta(a, c) <= ab + histogram_delta(b, c) + 1e-12);
  }
}

TEST_CASE("histogram suites") {
  synth::SceneParams params;
  params.width = 100;
  params.height = 80;
  const auto scene = synth::generate_scene(params);
  const auto hf0 = synth::simulate_fusion(scene.pan, scene.ms, 0.0, {0, 0, 0}, "HF0");
  const auto shifted = synth::simulate_fusion(scene.pan, scene.ms, 0.0, {0, 0, 30}, "SHIFT");

  SUBCASE("own masks, four bands, zero delta for an unchanged image") {
    auto suite = edge_histogram_suite(hf0, scene.ms, 20);
    CHECK(suite.scope == "edges@20");
    CHECK(suite.threshold == 20);
    REQUIRE(suite.pairs.size() == 4);
    CHECK(suite.pairs[3].band == BandId::L);
    for (const auto& p : suite.pairs) {
      if (p.delta) CHECK(*p.delta == 0.0);
    }
    // The fused edge histogram uses the fused image's own gradient.
    const auto sweep = threshold_sweep(shifted.b(), std::vector<int>{20});
    auto shifted_suite = edge_histogram_suite(shifted, scene.ms, 20);
    CHECK(shifted_suite.pairs[2].fused.total == sweep[0].mask.edge_count);
  }
  SUBCASE("a blue shift moves only the blue and L deltas") {
    auto suite = whole_histogram_suite(shifted, scene.ms);
    CHECK(suite.scope == "whole");
    CHECK_FALSE(suite.threshold.has_value());
    CHECK(*suite.pairs[0].delta == 0.0);
    CHECK(*suite.pairs[1].delta == 0.0);
    CHECK(*suite.pairs[2].delta > 0.1);
    CHECK(*suite.pairs[3].delta > 0.0);
  }
  SUBCASE("edge-free images are marked instead of compared") {
    MultibandImage flat(Band(20, 20, 5), Band(20, 20, 5), Band(20, 20, 5), "flat");
    for (const auto& p : edge_histogram_suite(flat, flat, 20).pairs) {
      CHECK_FALSE(p.delta.has_value());
      CHECK(p.marker == marker::kNoEdges);
    }
    Gen gen(101);
    MultibandImage busy = gen.image(20, 20, "busy");
    for (const auto& p : edge_histogram_suite(busy, flat, 20).pairs) {
      CHECK_FALSE(p.delta.has_value());
      CHECK(p.marker == marker::kEmptyHistogram);
    }
  }
}
