#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tcsm {

// Command line driver. `args` excludes the program name. Exit codes:
// 0 success (or property holds), 1 property violation / completeness or
// trap finding, 2 usage and input errors.
int runCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

} // namespace tcsm
