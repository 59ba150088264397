#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hqkd {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitAborted = 2;

/// Entry point of the `hqkd` tool. `args` excludes the program name.
/// Returns 0 on success, 1 on usage or configuration errors, 2 when a `run`
/// session aborts.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hqkd
