#pragma once

#include <string>
#include <vector>

namespace pgap::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalidInput = 1,
  kNotNegativeType = 2,
  kToleranceFailure = 3,
};

struct CommandOutput {
  int exit_code = kOk;
  std::string out;  // the report
  std::string err;  // diagnostics
};

// Runs one command line (without the program name).
CommandOutput run(const std::vector<std::string>& args);

}  // namespace pgap::cli
