#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rankclose {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,       // success; for check/closure/fiber: closable / finite
    kExitNegative = 1, // method-level negative outcome (not closable, no completion, ...)
    kExitUsage = 2,    // usage, parse or I/O error
};

/// Runs one invocation. `args` excludes the program name.
int run_cli(const std::vector<std::string> &args, std::istream &in, std::ostream &out, std::ostream &err);

} // namespace rankclose
