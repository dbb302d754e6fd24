#pragma once

#include <atomic>
#include <iosfwd>
#include <string>
#include <vector>

namespace fota::cli {

inline constexpr int kTrue = 0;
inline constexpr int kFalse = 1;
inline constexpr int kError = 2;

/// Runs one command line; `args` excludes the program name. Decision
/// subcommands return kTrue or kFalse, everything else kTrue on success.
/// Errors are reported on `err` with kError.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err, const std::atomic<bool>* cancel = nullptr);

}  // namespace fota::cli
