// Command-line front end. Kept in a library so the commands can be driven
// from tests without spawning processes.
//
// Exit codes: 0 success, 1 verification failure, 2 input error.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gsb::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerification = 1;
inline constexpr int kExitInput = 2;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gsb::cli
