#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fusionqa::cli {

// Process exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kUnreadable = 2;
inline constexpr int kDimensionMismatch = 3;
inline constexpr int kBadConfig = 4;
inline constexpr int kUsage = 64;

// Runs the fusionqa command line; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fusionqa::cli
