#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace riskstruct::cli {

/// Runs one command line (without the program name). Returns the exit
/// code: 0 ok, 1 I/O failure, 2 invalid input, 3 diff found differences.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace riskstruct::cli
