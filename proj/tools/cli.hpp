#pragma once

#include <string>
#include <vector>

namespace themescope::cli {

/// Entry point behind the `themescope` binary. Exit codes: 0 success,
/// 2 usage error, 3 input error, 1 internal error.
int run_command(const std::vector<std::string>& args);
int run_command(int argc, const char* const* argv);

} // namespace themescope::cli
