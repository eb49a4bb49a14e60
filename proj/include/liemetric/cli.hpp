#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace liemetric::cli {

/// Exit codes: 0 success, 1 a mathematical violation was found (invalid
/// algebra, non-parallel designated tensor, failed table check), 2 usage or
/// input errors. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace liemetric::cli
