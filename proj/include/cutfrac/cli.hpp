#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cutfrac {

/// Runs the command line `args` (program name excluded). Progress goes to `out`;
/// failures are reported on `err` as one line of JSON. Returns the process exit code:
/// 0 success, 1 numerical failure, 2 usage or input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cutfrac
