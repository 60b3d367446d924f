#pragma once

#include <iosfwd>

namespace qca {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;       // failed check or no period found
inline constexpr int kExitConfigError = 2;  // bad arguments, config or script

/// Entry point of the `qca` tool. Subcommands: simulate, script, period,
/// check, matrix.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qca
