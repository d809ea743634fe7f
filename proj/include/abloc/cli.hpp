#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace abloc {

inline constexpr int kSchemaVersion = 1;

/// Exit codes: 0 success, 1 negative answer to a check, 2 bad input.
enum ExitCode { kExitOk = 0, kExitNegative = 1, kExitInput = 2 };

/// Runs one command line (without the program name).  Reports go to `out`,
/// diagnostics to `err`; `in` feeds `batch` and `-` arguments.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in);

}  // namespace abloc
