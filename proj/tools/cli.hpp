#pragma once

#include <string>
#include <vector>

namespace stabctl::cli {

/// Dispatches one command line (without argv[0]). Returns the process
/// exit code: 0 success, 1 usage error, 2 numerical failure.
int run(const std::vector<std::string>& args);

}  // namespace stabctl::cli
