#include <doctest.h>

#include <omp.h>

#include <cstdlib>

#include "fusionqa/kernels.hpp"
#include "fusionqa/reference.hpp"
#include "generators.hpp"

using namespace fusionqa;
using fusionqa::testing::Gen;

namespace {

// Runs fn once per worker count so the parallel paths are exercised even on
// a single-core host. Bands are large enough to cross the parallel cutoff.
template <typename Fn>
void for_each_worker_count(Fn fn) {
  const int saved = omp_get_max_threads();
  for (int n : {1, 2, 3, 8}) {
    omp_set_num_threads(n);
    fn(n);
  }
  omp_set_num_threads(saved);
}

}  // namespace

TEST_CASE("kernels agree with the serial reference at any worker count") {
  Gen gen(103);
  const Band band = gen.band(257, 131);
  const Band other = gen.band(257, 131);
  const auto n = band.size();

  for_each_worker_count([&](int workers) {
    CAPTURE(workers);
    std::vector<double> mag(n);
    kernels::sobel_magnitude(band.pixels(), band.width(), band.height(), mag);
    const auto expected = reference::sobel_magnitude(band);
    for (std::size_t i = 0; i < n; ++i) REQUIRE(mag[i] == expected[i]);

    std::vector<std::uint8_t> labels(n);
    const auto count = kernels::threshold_labels(mag, 60.0, labels);
    std::uint64_t brute = 0;
    for (std::size_t i = 0; i < n; ++i) {
      REQUIRE(labels[i] == (expected[i] > 60.0 ? 1 : 0));
      brute += labels[i];
    }
    CHECK(count == brute);

    CHECK(kernels::histogram(band.pixels()) == reference::histogram(band));
    CHECK(kernels::masked_histogram(band.pixels(), labels, 1) ==
          reference::masked_histogram(band, labels));

    std::uint64_t sq = 0;
    std::uint64_t diff = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::int64_t a = band.pixels()[i];
      const std::int64_t b = other.pixels()[i];
      sq += static_cast<std::uint64_t>(a * a);
      diff += static_cast<std::uint64_t>((a - b) * (a - b));
    }
    CHECK(kernels::sum_of_squares(band.pixels()) == sq);
    CHECK(kernels::sum_of_squared_differences(band.pixels(), other.pixels()) == diff);

    std::vector<Intensity> up(n * 9);
    kernels::upsample_nearest(band.pixels(), band.width(), band.height(), 3, up);
    const Band up_ref = reference::upsample_nearest(band, 3);
    CHECK(std::equal(up.begin(), up.end(), up_ref.pixels().begin()));

    for (int radius : {0, 1, 2, 4}) {
      std::vector<Intensity> blurred(n);
      kernels::box_blur(band.pixels(), band.width(), band.height(), radius, blurred);
      const Band blur_ref = reference::box_blur(band, radius);
      CHECK(std::equal(blurred.begin(), blurred.end(), blur_ref.pixels().begin()));
    }
  });
}

TEST_CASE("box blur of a constant band is the identity") {
  Band flat(40, 40, 123);
  std::vector<Intensity> out(flat.size());
  kernels::box_blur(flat.pixels(), 40, 40, 3, out);
  for (auto v : out) CHECK(v == 123);
}

TEST_CASE("FUSIONQA_THREADS caps the worker count") {
  const int natural = omp_get_max_threads();
  ::setenv("FUSIONQA_THREADS", "1", 1);
  CHECK(kernels::worker_count() == 1);
  ::setenv("FUSIONQA_THREADS", "100000", 1);
  CHECK(kernels::worker_count() == natural);
  ::setenv("FUSIONQA_THREADS", "junk", 1);
  CHECK(kernels::worker_count() == natural);
  ::setenv("FUSIONQA_THREADS", "0", 1);
  CHECK(kernels::worker_count() == natural);
  ::unsetenv("FUSIONQA_THREADS");
  CHECK(kernels::worker_count() == natural);
}
