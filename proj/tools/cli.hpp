#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pidec::cli {

enum ExitCode : int {
  kOk = 0,
  kViolation = 1,
  kUsage = 2,
  kInconclusive = 3,
};

// Runs one command line. Output goes to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::vector<std::string> demo_names();

}  // namespace pidec::cli
