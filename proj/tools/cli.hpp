#pragma once

// `magprop` command-line front end. Kept as a library so tests can drive it
// in-process with captured streams.

#include <iosfwd>
#include <string>
#include <vector>

namespace magprop::cli {

enum ExitCode : int {
  ok = 0,
  verify_failed = 1,
  parse_error = 2,
  caustic = 3,
  no_convergence = 4,
};

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace magprop::cli
