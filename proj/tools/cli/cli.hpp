#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace geomca::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCompute = 1;
inline constexpr int kExitUsage = 2;

/// Runs the `geomca` command line. `args` excludes the program name.
/// Returns the process exit code; never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace geomca::cli
