#pragma once

#include <iosfwd>

namespace irsvm::cli {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNotConverged = 1;
inline constexpr int kExitBadInput = 2;

/// Entry point of the `irsvm` tool. Output goes to `out`, diagnostics to `err`.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same, bound to std::cout and std::cerr.
int cli_main(int argc, const char* const* argv);

}  // namespace irsvm::cli
