#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tensegrity::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNotStable = 1;
inline constexpr int kExitInputError = 2;

/// Runs one command. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tensegrity::cli
