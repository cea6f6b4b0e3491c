#include "fusionqa/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "fusionqa/error.hpp"
#include "fusionqa/kernels.hpp"

namespace fusionqa::synth {

namespace {

constexpr int kGrid = kResolutionRatio;

// Engine output only; std distributions are not reproducible across
// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  int uniform(int lo, int hi) {
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  // Multiple of the grid in [lo, hi].
  int aligned(int lo, int hi) { return uniform(lo / kGrid, hi / kGrid) * kGrid; }

 private:
  std::mt19937_64 engine_;
};

void fill_rect(std::vector<int>& canvas, int width, int height, int x0, int y0, int w, int h,
               int value) {
  for (int y = std::max(y0, 0); y < std::min(y0 + h, height); ++y)
    for (int x = std::max(x0, 0); x < std::min(x0 + w, width); ++x)
      canvas[static_cast<std::size_t>(y) * width + x] = value;
}

Band box_blur(const Band& band, int radius) {
  std::vector<Intensity> out(band.size());
  kernels::box_blur(band.pixels(), band.width(), band.height(), radius, out);
  return Band(band.width(), band.height(), std::move(out));
}

Band block_average(const Band& band, int factor) {
  const int w = band.width() / factor;
  const int h = band.height() / factor;
  const int area = factor * factor;
  std::vector<Intensity> out(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int sum = 0;
      for (int j = 0; j < factor; ++j)
        for (int i = 0; i < factor; ++i) sum += band.at(x * factor + i, y * factor + j);
      out[static_cast<std::size_t>(y) * w + x] = static_cast<Intensity>((2 * sum + area) / (2 * area));
    }
  }
  return Band(w, h, std::move(out));
}

Band tinted(const Band& band, double factor) {
  std::vector<Intensity> out(band.size());
  auto px = band.pixels();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = to_intensity(px[i] * factor);
  return Band(band.width(), band.height(), std::move(out));
}

Band render_pan(const SceneParams& p) {
  Rng rng(p.seed);
  const int w = p.width;
  const int h = p.height;
  std::vector<int> canvas(static_cast<std::size_t>(w) * h);

  // Background: gentle left-to-right ramp, stepped on the grid.
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      canvas[static_cast<std::size_t>(y) * w + x] = 70 + (60 * (x / kGrid) * kGrid) / w;

  const int features = static_cast<int>(std::lround(p.detail_density * w * h / 10000.0));
  for (int f = 0; f < features; ++f) {
    const int kind = rng.uniform(0, 9);
    const int x0 = rng.aligned(0, w - kGrid);
    const int y0 = rng.aligned(0, h - kGrid);
    const int value = rng.uniform(30, 230);
    if (kind < 6) {
      // Flat field.
      const int rw = rng.aligned(kGrid * 2, std::max(kGrid * 2, w / 5));
      const int rh = rng.aligned(kGrid * 2, std::max(kGrid * 2, h / 5));
      fill_rect(canvas, w, h, x0, y0, rw, rh, value);
    } else if (kind < 8) {
      // Road-like bar, one grid cell wide.
      const bool horizontal = rng.uniform(0, 1) == 0;
      const int len = rng.aligned(kGrid * 4, std::max(kGrid * 4, (horizontal ? w : h) / 2));
      if (horizontal) {
        fill_rect(canvas, w, h, x0, y0, len, kGrid, value);
      } else {
        fill_rect(canvas, w, h, x0, y0, kGrid, len, value);
      }
    } else {
      // Stepped ramp patch.
      const int rw = rng.aligned(kGrid * 4, std::max(kGrid * 4, w / 4));
      const int rh = rng.aligned(kGrid * 2, std::max(kGrid * 2, h / 6));
      const int steps = std::max(rw / kGrid, 1);
      const int delta = rng.uniform(3, 12);
      for (int s = 0; s < steps; ++s) {
        fill_rect(canvas, w, h, x0 + s * kGrid, y0, kGrid, rh, std::clamp(value + s * delta - steps * delta / 2, 0, 255));
      }
    }
  }

  std::vector<Intensity> px(canvas.size());
  for (std::size_t i = 0; i < px.size(); ++i) {
    int v = canvas[i];
    if (p.noise_amplitude > 0) v += rng.uniform(-p.noise_amplitude, p.noise_amplitude);
    px[i] = static_cast<Intensity>(std::clamp(v, 0, 255));
  }
  return Band(w, h, std::move(px));
}

}  // namespace

Scene generate_scene(const SceneParams& params) {
  if (params.width < kGrid || params.height < kGrid || params.width % kGrid != 0 ||
      params.height % kGrid != 0) {
    throw InvalidArgument("scene dimensions must be positive multiples of " + std::to_string(kGrid) +
                          ", got " + std::to_string(params.width) + "x" +
                          std::to_string(params.height));
  }
  if (params.blur_radius < 0 || params.noise_amplitude < 0 || params.detail_density < 0.0) {
    throw InvalidArgument("scene blur radius, noise amplitude and detail density must be >= 0");
  }
  for (double t : params.tint) {
    if (!(t >= 0.0)) throw InvalidArgument("band tint must be >= 0");
  }

  Band pan = render_pan(params);
  std::array<Band, 3> low = {Band(1, 1), Band(1, 1), Band(1, 1)};
  for (int k = 0; k < 3; ++k) {
    low[k] = block_average(box_blur(tinted(pan, params.tint[k]), params.blur_radius), kGrid);
  }
  MultibandImage ms_low(low[0], low[1], low[2], "MS");
  MultibandImage ms = upsample_nearest(ms_low, kGrid);
  return Scene{std::move(pan), std::move(ms), std::move(ms_low)};
}

MultibandImage simulate_fusion(const Band& pan, const MultibandImage& ms, double hf_gain,
                               const std::array<int, 3>& spectral_shift, std::string label,
                               int detail_radius) {
  if (pan.width() != ms.width() || pan.height() != ms.height()) {
    throw DimensionError("PAN " + std::to_string(pan.width()) + "x" + std::to_string(pan.height()) +
                         " vs MS " + std::to_string(ms.width()) + "x" + std::to_string(ms.height()));
  }
  if (hf_gain < 0.0) throw InvalidArgument("hf_gain must be >= 0");

  const Band smooth = box_blur(pan, detail_radius);
  auto p = pan.pixels();
  auto s = smooth.pixels();
  std::array<Band, 3> out = {Band(1, 1), Band(1, 1), Band(1, 1)};
  for (int k = 0; k < 3; ++k) {
    auto m = ms.band(kRgb[k]).pixels();
    std::vector<Intensity> px(m.size());
    for (std::size_t i = 0; i < px.size(); ++i) {
      const double detail = static_cast<double>(p[i]) - static_cast<double>(s[i]);
      px[i] = to_intensity(m[i] + hf_gain * detail + spectral_shift[k]);
    }
    out[k] = Band(pan.width(), pan.height(), std::move(px));
  }
  return MultibandImage(std::move(out[0]), std::move(out[1]), std::move(out[2]), std::move(label));
}

}  // namespace fusionqa::synth
