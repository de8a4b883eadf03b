#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace darboux::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInput = 2;

/// Runs one subcommand. args excludes the program name. Reports and data go
/// to `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace darboux::cli
