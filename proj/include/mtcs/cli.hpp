#pragma once

#include <ostream>

namespace mtcs {

/// Exit codes: 0 success, 1 I/O failure, 2 usage or validation error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitUsage = 2;

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mtcs
