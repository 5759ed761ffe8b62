#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace trigsum::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // verdict failure or computation error
inline constexpr int kExitUsage = 2;

/// Runs one command. `args` excludes the program name. Reports go to `out`
/// unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Flat "key = value" document; '#' starts a comment line.
std::vector<std::pair<std::string, std::string>> parse_config(const std::string& text);

}  // namespace trigsum::cli
