#pragma once

#include <ostream>

namespace trirep {

/// Exit status: 0 success, 1 validation failure, 2 numerical failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace trirep
