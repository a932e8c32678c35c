#pragma once

#include <ostream>

namespace parastat {

/// Exit codes: 0 success, 1 invariant failure, 2 argument/parameter error,
/// 3 sizing error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace parastat
