#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qcd::cli {

enum ExitCode : int {
  kPositive = 0,   // decision yes / Found / halted
  kUsage = 1,      // usage or input error
  kExhausted = 2,  // budget exhausted, the partial algorithm would keep running
  kNegative = 3,   // decision no
};

// Runs one command line (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qcd::cli
