#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tdga::cli {

// Runs one invocation; args excludes the program name. Returns the exit code:
// 0 success, 1 domain or usage error, 2 verification failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tdga::cli
