#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace symrpr::cli {

// Runs one command line (arguments after the program name). Returns the
// process exit code: 0 success, 1 bad input or failed computation, 2 when
// the DKP has no real solution.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace symrpr::cli
