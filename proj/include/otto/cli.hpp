#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace otto {

// Parse and execute one command-line invocation (without the program
// name).  Returns the process exit code:
//   0  success (including --help / --version)
//   2  invalid usage or invalid parameter values
//   3  the requested quantity is undefined at the given parameters
// All numeric output is printed with 17 significant digits, so identical
// invocations produce identical bytes.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace otto
