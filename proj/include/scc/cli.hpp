#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace scc::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;   ///< flag or input validation failure
inline constexpr int kExitNumeric = 3; ///< solver or other numeric failure

/// Runs the command-line front end. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

/// argv wrapper for main().
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

} // namespace scc::cli
