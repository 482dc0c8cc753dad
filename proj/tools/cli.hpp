#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gqms {

enum ExitCode : int { k_exit_ok = 0, k_exit_failed = 1, k_exit_input = 2, k_exit_usage = 3 };

/// Runs one `gqms` invocation. `args` excludes the program name.
/// `patterns_env` stands in for the GQMS_PATTERNS variable.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const std::optional<std::filesystem::path>& patterns_env = std::nullopt);

}  // namespace gqms
