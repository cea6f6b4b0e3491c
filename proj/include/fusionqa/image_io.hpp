#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include "fusionqa/raster.hpp"

namespace fusionqa::io {

// Either a single band (P5 / gray PNG) or an RGB image (P6 / RGB PNG).
using AnyImage = std::variant<Band, MultibandImage>;

// Reads binary PGM (P5), binary PPM (P6) or 8-bit PNG. Netpbm maxval 255 is
// taken as-is; maxval 63 (6-bit data) is left-shifted by 2 onto the 8-bit
// scale, as is a PNG whose sBIT chunk declares 6 significant bits.
AnyImage read_image(const std::filesystem::path& path, const std::string& label = {});

Band read_band(const std::filesystem::path& path);
MultibandImage read_rgb(const std::filesystem::path& path, const std::string& label);

// Netpbm headers are written as "P5\n<w> <h>\n255\n".
void write_pgm(const std::filesystem::path& path, const Band& band);
void write_ppm(const std::filesystem::path& path, const MultibandImage& img);

std::string encode_pgm(const Band& band);
std::string encode_ppm(const MultibandImage& img);
AnyImage decode_netpbm(std::string_view bytes, const std::string& label = {});

}  // namespace fusionqa::io
