#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qqtool {

enum ExitCode { kPass = 0, kCheckFailed = 1, kInputError = 2, kNoConvergence = 3 };

// Runs one command line (without the program name). The JSON report goes to
// out, iteration logs and diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Runs every argument list of a batch file on worker threads and prints the
// reports in input order. Returns the largest exit code.
int run_batch(const std::string& batch_file, int workers, std::ostream& out, std::ostream& err);

}  // namespace qqtool
