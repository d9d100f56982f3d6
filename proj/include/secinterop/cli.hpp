#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace secinterop {

// Runs one command line (without the program name). Returns the exit code:
// 0 clean, 1 findings, 2 input or usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace secinterop
