#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace evenif::cli {

/// Runs one CLI invocation. `args` excludes the program name. Exit codes:
/// 0 success, 1 usage, 2 parse error, 3 model validation error, 4 budget
/// or cap exceeded, 5 no counterfactual exists.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace evenif::cli
