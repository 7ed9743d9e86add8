#pragma once

// Command-line front end. Every subcommand writes one JSON document (or CSV
// rows) to `out` and diagnostics to `err`.

#include <iosfwd>

namespace cfx {

inline constexpr int kExitOk = 0;
/// A verification or identity check failed beyond tolerance.
inline constexpr int kExitCheckFailed = 1;
/// Bad usage or malformed input.
inline constexpr int kExitUsage = 2;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cfx
