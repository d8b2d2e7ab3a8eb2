#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace urn {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInvalidInput = 2;

/// Entry point behind the urnsim binary; args excludes the program name.
/// Subcommands: simulate, fixed-points, verify, diagnose, print-defaults.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "1,2,3" -> {1, 2, 3}
std::vector<std::uint64_t> parse_seed_list(const std::string& text);
/// "N..M" -> {N, ..., M}, inclusive
std::vector<std::uint64_t> parse_seed_range(const std::string& text);

}  // namespace urn
