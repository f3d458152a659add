#pragma once

#include <ostream>

namespace sublevel {

/// Exit codes: 0 success, 1 other failure, 2 invalid input, 3 internal consistency failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sublevel
