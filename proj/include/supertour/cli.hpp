#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace supertour::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRuntime = 3;

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kSchema = 1;

/// Runs the command line `args` (without the program name). Reports go to
/// `out` unless --out names a file; errors are written to `err` as JSON.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace supertour::cli
