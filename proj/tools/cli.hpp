#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace affcurve::cli {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
    kOk = 0,
    kInternal = 1,
    kUsage = 2,
    kNoRoot = 3,
    kStateSpace = 4,
    kVerifyFailed = 5,
    kMcFailed = 6,
};

/// Runs one CLI invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace affcurve::cli
