#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gpcip {

/// Exit codes: 0 pass, 1 usage/parameter error, 2 correctness failure
/// detected, 3 resource budget exceeded.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gpcip
