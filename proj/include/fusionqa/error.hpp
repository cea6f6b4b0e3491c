#pragma once

#include <stdexcept>
#include <string>

namespace fusionqa {

// Base for every failure the library reports. Subclasses map onto the
// CLI exit codes (see tools/fusionqa.cpp).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File missing, unreadable, malformed or of an unsupported flavour.
class IoError : public Error {
 public:
  using Error::Error;
};

// Two images or masks that must agree in shape do not.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent user configuration (region JSON, thresholds).
class ConfigError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A region or block that falls outside its image.
class BoundsError : public Error {
 public:
  using Error::Error;
};

// Statistics requested over zero pixels.
class EmptyRegionError : public Error {
 public:
  using Error::Error;
};

// Contrast undefined because the population is all black (Imax + Imin = 0
// or mean = 0).
class DegenerateRegionError : public Error {
 public:
  using Error::Error;
};

// mean / sigma undefined because sigma = 0.
class ZeroDeviationError : public Error {
 public:
  using Error::Error;
};

// Whole-image SNR has a zero denominator: fused equals reference. This is
// the ideal limit, not a numeric failure, and is reported as a marker.
class IdenticalImagesError : public Error {
 public:
  using Error::Error;
};

class EmptyHistogramError : public Error {
 public:
  using Error::Error;
};

// Marker texts written in place of a value when a metric is undefined.
namespace marker {
inline constexpr const char* kNoEdges = "no edges";
inline constexpr const char* kAllBlack = "degenerate (all-black)";
inline constexpr const char* kConstantRegion = "undefined (constant region)";
inline constexpr const char* kIdenticalImages = "identical images";
inline constexpr const char* kEmptyHistogram = "empty histogram";
inline constexpr const char* kNoHomogeneous = "no homogeneous pixels";
}  // namespace marker

}  // namespace fusionqa
