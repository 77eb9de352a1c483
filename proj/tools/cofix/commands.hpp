#pragma once

#include <ostream>

namespace cofix::cli {

// Exit codes
inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;  // a hypothesis or the solve failed
inline constexpr int kUsage = 2;   // bad flags, schema error, unsupported flavor

// Whole command line, argv[0] included. Everything goes to `out`/`err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cofix::cli
