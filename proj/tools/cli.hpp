#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "curvhom/classify.hpp"

namespace curvhom::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kConfigError = 2,
  kHypothesisViolated = 3,
};

/// Parses "coord=min:max:count". Throws std::invalid_argument.
GridAxis parse_grid_axis(const std::string& text);

/// Runs the tool; the report goes to `out` (or --output), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace curvhom::cli
