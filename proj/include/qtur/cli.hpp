#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qtur::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line; `args` excludes the program name. Tables go to `out` unless --out is given;
/// diagnostics go to `err`. Returns 0, 1 (runtime/validation) or 2 (usage).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Formats a double with 17 significant digits, locale independent.
std::string format_double(double x);

}  // namespace qtur::cli
