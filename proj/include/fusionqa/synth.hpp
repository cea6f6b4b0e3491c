#pragma once

#include <array>
#include <cstdint>

#include "fusionqa/raster.hpp"

namespace fusionqa::synth {

// Deterministic stand-in for a registered PAN / MS acquisition pair.
struct SceneParams {
  int width = 600;
  int height = 525;
  double detail_density = 3.0;       // features per 100x100 pixels
  std::uint64_t seed = 1;
  std::array<int, 3> spectral_shift = {0, 0, 0};
  double hf_gain = 1.0;
  int blur_radius = 2;
  std::array<double, 3> tint = {0.95, 0.85, 0.75};
  int noise_amplitude = 2;           // uniform +/- noise on PAN
};

// Ratio between PAN and MS ground sampling.
inline constexpr int kResolutionRatio = 5;

struct Scene {
  Band pan;
  MultibandImage ms;          // upsampled back to PAN size
  MultibandImage ms_lowres;   // width / 5 x height / 5
};

// PAN is a pattern of 5-aligned flat rectangles, stepped ramps and bars plus
// optional noise. Each MS band is PAN scaled by its tint, box blurred,
// block-averaged down by 5 and upsampled by nearest neighbour.
Scene generate_scene(const SceneParams& params);

// Per band: ms + hf_gain * (pan - box_blur(pan, detail_radius)) + shift,
// rounded and clamped.
MultibandImage simulate_fusion(const Band& pan, const MultibandImage& ms, double hf_gain,
                               const std::array<int, 3>& spectral_shift, std::string label,
                               int detail_radius = 2);

}  // namespace fusionqa::synth
