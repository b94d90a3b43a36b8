#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cardvote {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitViolation = 2;

/// Runs one CLI invocation; `args` excludes the program name. Reports go to
/// `out` (or the --out file), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cardvote
