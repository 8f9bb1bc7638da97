#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace scenred {

enum ExitCode { kExitOk = 0, kExitUsage = 2, kExitInvalid = 3, kExitBudget = 4 };

// Runs one command line (args excludes the program name). Diagnostics go to
// `err` as a single line.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_cli(int argc, char** argv);

}  // namespace scenred
