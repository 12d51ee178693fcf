#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace reeb::cli {

enum ExitCode : int {
  kOk = 0,
  kFailed = 1,          // verification failed or REFUTED
  kSearchExhausted = 2,
  kInvalidInput = 3,
};

// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace reeb::cli
