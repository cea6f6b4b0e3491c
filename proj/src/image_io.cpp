#include "fusionqa/image_io.hpp"

#include <png.h>

#include <cctype>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "fusionqa/error.hpp"

namespace fusionqa::io {

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("error reading '" + path.string() + "'");
  return bytes;
}

void spill(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("error writing '" + path.string() + "'");
}

// Header tokens of a binary netpbm file: whitespace and '#' comments may sit
// between any two tokens.
class HeaderCursor {
 public:
  explicit HeaderCursor(std::string_view bytes) : bytes_(bytes) {}

  unsigned long number(const char* what) {
    skip_space_and_comments();
    unsigned long value = 0;
    std::size_t digits = 0;
    while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      value = value * 10 + static_cast<unsigned long>(bytes_[pos_] - '0');
      if (value > 1'000'000'000UL) throw IoError(std::string("netpbm ") + what + " too large");
      ++pos_;
      ++digits;
    }
    if (digits == 0) throw IoError(std::string("netpbm header: expected ") + what);
    return value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t raster_offset() {
    if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
      throw IoError("netpbm header: missing separator before raster");
    }
    return pos_ + 1;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const char c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view bytes_;
  std::size_t pos_ = 2;
};

// 6-bit data is promoted onto the 8-bit scale.
int promotion_shift(unsigned long maxval) {
  if (maxval == 255) return 0;
  if (maxval == 63) return 2;
  throw IoError("unsupported netpbm maxval " + std::to_string(maxval) + " (expected 255 or 63)");
}

std::vector<Intensity> promote(std::vector<Intensity> px, int shift, unsigned long maxval) {
  for (Intensity& v : px) {
    if (v > maxval) throw IoError("netpbm sample exceeds maxval");
    v = static_cast<Intensity>(v << shift);
  }
  return px;
}

// Minimal chunk walk for what the simplified libpng API does not expose.
struct PngHeaderInfo {
  int bit_depth = 0;
  int significant_bits = 0;  // 0 when no sBIT chunk
};

std::uint32_t be32(const unsigned char* p) {
  return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) | (std::uint32_t{p[2]} << 8) | p[3];
}

PngHeaderInfo scan_png_chunks(std::string_view bytes) {
  PngHeaderInfo info;
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
  std::size_t pos = 8;
  while (pos + 8 <= bytes.size()) {
    const std::uint32_t len = be32(p + pos);
    const std::string_view type(bytes.data() + pos + 4, 4);
    const std::size_t data = pos + 8;
    if (data + len > bytes.size()) break;
    if (type == "IHDR" && len >= 9) info.bit_depth = p[data + 8];
    if (type == "sBIT" && len >= 1) info.significant_bits = p[data];
    if (type == "IDAT" || type == "IEND") break;
    pos = data + len + 4;
  }
  return info;
}

AnyImage decode_png(std::string_view bytes, const std::string& label, const std::string& name) {
  const PngHeaderInfo header = scan_png_chunks(bytes);
  if (header.bit_depth > 8) throw IoError("'" + name + "': only 8-bit PNG is supported");

  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw IoError("'" + name + "': " + image.message);
  }
  const bool color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
  image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  const int channels = color ? 3 : 1;
  std::vector<Intensity> buffer(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
    std::string msg = image.message;
    png_image_free(&image);
    throw IoError("'" + name + "': " + msg);
  }
  const int w = static_cast<int>(image.width);
  const int h = static_cast<int>(image.height);
  const int shift = header.significant_bits == 6 ? 2 : 0;

  std::vector<std::vector<Intensity>> planes(channels, std::vector<Intensity>(static_cast<std::size_t>(w) * h));
  for (std::size_t i = 0; i < planes[0].size(); ++i) {
    for (int c = 0; c < channels; ++c) {
      planes[c][i] = static_cast<Intensity>(buffer[i * channels + c] << shift);
    }
  }
  if (!color) return Band(w, h, std::move(planes[0]));
  return MultibandImage(Band(w, h, std::move(planes[0])), Band(w, h, std::move(planes[1])),
                        Band(w, h, std::move(planes[2])), label);
}

AnyImage decode_netpbm_named(std::string_view bytes, const std::string& label,
                             const std::string& name) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6')) {
    throw IoError("'" + name + "': not a binary PGM (P5) or PPM (P6) file");
  }
  const bool rgb = bytes[1] == '6';
  HeaderCursor cursor(bytes);
  const unsigned long w = cursor.number("width");
  const unsigned long h = cursor.number("height");
  const unsigned long maxval = cursor.number("maxval");
  const std::size_t offset = cursor.raster_offset();
  if (w == 0 || h == 0) throw IoError("'" + name + "': zero image dimension");
  const int shift = promotion_shift(maxval);

  const std::size_t channels = rgb ? 3 : 1;
  const std::size_t count = static_cast<std::size_t>(w) * h;
  if (bytes.size() - offset < count * channels) {
    throw IoError("'" + name + "': truncated raster (" + std::to_string(bytes.size() - offset) +
                  " of " + std::to_string(count * channels) + " bytes)");
  }
  const auto* raster = reinterpret_cast<const Intensity*>(bytes.data() + offset);
  if (!rgb) {
    return Band(static_cast<int>(w), static_cast<int>(h),
                promote(std::vector<Intensity>(raster, raster + count), shift, maxval));
  }
  std::vector<Intensity> r(count), g(count), b(count);
  for (std::size_t i = 0; i < count; ++i) {
    r[i] = raster[3 * i];
    g[i] = raster[3 * i + 1];
    b[i] = raster[3 * i + 2];
  }
  const int wi = static_cast<int>(w);
  const int hi = static_cast<int>(h);
  return MultibandImage(Band(wi, hi, promote(std::move(r), shift, maxval)),
                        Band(wi, hi, promote(std::move(g), shift, maxval)),
                        Band(wi, hi, promote(std::move(b), shift, maxval)), label);
}

}  // namespace

AnyImage decode_netpbm(std::string_view bytes, const std::string& label) {
  return decode_netpbm_named(bytes, label, "<memory>");
}

AnyImage read_image(const std::filesystem::path& path, const std::string& label) {
  const std::string bytes = slurp(path);
  static constexpr unsigned char kPngSig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  if (bytes.size() >= 8 && std::memcmp(bytes.data(), kPngSig, 8) == 0) {
    return decode_png(bytes, label, path.string());
  }
  return decode_netpbm_named(bytes, label, path.string());
}

Band read_band(const std::filesystem::path& path) {
  AnyImage img = read_image(path);
  if (auto* band = std::get_if<Band>(&img)) return std::move(*band);
  throw IoError("'" + path.string() + "': expected a single-band (grayscale) image");
}

MultibandImage read_rgb(const std::filesystem::path& path, const std::string& label) {
  AnyImage img = read_image(path, label);
  if (auto* rgb = std::get_if<MultibandImage>(&img)) return std::move(*rgb);
  throw IoError("'" + path.string() + "': expected an RGB image");
}

std::string encode_pgm(const Band& band) {
  std::string out = "P5\n" + std::to_string(band.width()) + " " + std::to_string(band.height()) + "\n255\n";
  auto px = band.pixels();
  out.append(reinterpret_cast<const char*>(px.data()), px.size());
  return out;
}

std::string encode_ppm(const MultibandImage& img) {
  std::string out = "P6\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  const std::size_t header = out.size();
  auto r = img.r().pixels();
  auto g = img.g().pixels();
  auto b = img.b().pixels();
  out.resize(header + 3 * r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    out[header + 3 * i] = static_cast<char>(r[i]);
    out[header + 3 * i + 1] = static_cast<char>(g[i]);
    out[header + 3 * i + 2] = static_cast<char>(b[i]);
  }
  return out;
}

void write_pgm(const std::filesystem::path& path, const Band& band) { spill(path, encode_pgm(band)); }

void write_ppm(const std::filesystem::path& path, const MultibandImage& img) {
  spill(path, encode_ppm(img));
}

}  // namespace fusionqa::io
