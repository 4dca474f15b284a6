#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hk::cli {

/// Runs the hk command line. Data goes to `out`, diagnostics to `err`.
/// Exit codes: 0 success/holds, 1 check failed, 2 usage/parse error,
/// 3 budget exceeded or inconclusive.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv);

}  // namespace hk::cli
