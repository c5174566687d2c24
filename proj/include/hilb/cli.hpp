#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hilb {

// Run the command-line driver on argv-style arguments (without the program
// name). Writes results to out, diagnostics to err. Returns the process exit
// code: 0 success, 1 a verification check failed, 2 usage or input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hilb
