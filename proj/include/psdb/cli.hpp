#pragma once

#include <iosfwd>

namespace psdb::cli {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFinding = 1;  // mismatch or counterexample
inline constexpr int kExitUsage = 2;    // usage, parse or validation error

/// Entry point of `psdblocks`; writes to `out` / `err` instead of the process
/// streams so it can be driven in-process.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace psdb::cli
