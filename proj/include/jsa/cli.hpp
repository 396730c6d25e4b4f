#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace jsa::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitData = 1;
inline constexpr int kExitUsage = 2;

/// Run one subcommand. `args` excludes the program name. The report goes to
/// --out when given, else to `out`; diagnostics and usage text go to `err`.
/// Returns 0 on success, 1 on a data or validation failure, 2 on misuse.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jsa::cli
