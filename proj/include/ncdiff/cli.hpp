#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ncdiff {

// Runs one ncdiff invocation; `args` excludes the program name.
// Results go to `out`, diagnostics to `err`.
// Exit codes: 0 success, 1 domain error, 2 usage error.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ncdiff
