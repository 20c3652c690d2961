#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sumset::cli {

/// Runs the `sumset-ramsey` command line. `args` excludes the program name.
/// Exit codes: 0 success, 1 domain error or failed check, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sumset::cli
