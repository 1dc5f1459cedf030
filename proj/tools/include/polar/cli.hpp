#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace polar::cli {

/// Exit statuses of run().
enum ExitCode : int { kOk = 0, kDomainError = 1, kUsageError = 2, kInternalError = 3 };

/// Runs one command line (without the program name). Reports go to `out`
/// unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polar::cli
