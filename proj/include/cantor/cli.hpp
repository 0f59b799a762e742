#pragma once

#include <span>
#include <string>

namespace cantor::cli {

enum ExitCode : int {
    kSuccess = 0,
    kCheckFailure = 1,
    kUsageError = 2,
    kIoError = 3,
};

/// Runs the command line `args` (args[0] is the program name) and returns the
/// process exit status.
int run(std::span<const std::string> args);

} // namespace cantor::cli
