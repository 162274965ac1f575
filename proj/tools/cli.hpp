#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mollow::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitCapacity = 2;
inline constexpr int kExitDeviation = 3;

/// Runs the tool with argv[1..] in `args`. Data goes to `out` when no
/// output path is given; diagnostics go to `err`. Returns the exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mollow::cli
