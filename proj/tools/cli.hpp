#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eqgb::cli {

/// Exit codes: 0 success, 1 error, 2 resource limit reached.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eqgb::cli
