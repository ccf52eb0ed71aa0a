#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cpx {

// Parses and runs one CLI invocation. Returns the process exit code:
// 0 success, 2 input error, 3 parameter/domain error, 4 resource error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cpx
