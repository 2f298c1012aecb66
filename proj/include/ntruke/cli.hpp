#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ntruke::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerifyFailed = 2;

/// Subcommands: keygen, exchange, attack, experiment, verify.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Decimal, or hexadecimal with a 0x prefix. Throws ConfigError.
std::uint64_t parse_seed(const std::string& text);

}  // namespace ntruke::cli
