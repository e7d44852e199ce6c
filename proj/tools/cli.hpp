#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace asymkit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Runs one subcommand. `args` starts at the subcommand name (argv[1...]).
/// The artifact goes to `out` (or the --out file) only on success; a domain
/// failure writes a single-line JSON error object to `out` and returns 1,
/// a usage error writes help text to `err` and returns 2.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace asymkit::cli
