#pragma once

#include <iosfwd>

namespace deph::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;

/// Parses argv (argv[0] is the program name) and runs one subcommand.
/// Results go to --out when given, otherwise to `out`; diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace deph::cli
