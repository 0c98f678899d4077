#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace quasiq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalidArguments = 2;
inline constexpr int kExitResourceLimit = 3;

// Environment variable giving the default worker count for scans.
inline constexpr const char* kThreadsEnv = "QUASIQ_THREADS";

// Runs one command line (program name excluded). Results go to `out`,
// diagnostics and usage text to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace quasiq::cli
