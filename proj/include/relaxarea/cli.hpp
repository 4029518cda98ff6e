#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace relaxarea {

/// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitBadArgs = 2;
inline constexpr int kExitNoConvergence = 3;
inline constexpr int kExitIo = 4;

/// Runs one invocation; args[0] is the program name. The one-line summary goes to `out`,
/// diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace relaxarea
