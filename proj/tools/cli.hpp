#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qcover::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kInvalidInput = 2,
  kBudgetExceeded = 3,
};

/// Runs one qcover command. `args` excludes the program name. Reports go to
/// `out`, diagnostics to `err`; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qcover::cli
