#pragma once

#include <ostream>

namespace sphinterp::cli {

/// Runs one command line. Returns the process exit code: 0 iff every check
/// on the invoked path passed.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sphinterp::cli
