#pragma once

#include <string>
#include <vector>

#include "curvhom/classify.hpp"
#include "curvhom/verify.hpp"

namespace curvhom {

std::string tool_version();

/// Run settings echoed into every report.
struct ReportConfig {
  std::string command;
  std::string family;
  std::string function;  ///< empty for custom metrics
  std::string metric;    ///< custom metric components, empty otherwise
  int order = 0;
  double tolerance = kDefaultTolerance;
  std::vector<GridAxis> grid;
};

// JSON documents share the top-level keys
//   {config, verdicts[], invariants[], exclusions[], tool_version}
// plus command-specific extras. Output is deterministic for a given input.

std::string classify_json(const ReportConfig& config, const HomogeneityReport& report);
std::string verify_json(const ReportConfig& config, const VerificationReport& report);
/// Per-point table: verdicts[] is empty, invariants[] holds one row per point.
std::string invariants_json(const ReportConfig& config, const HomogeneityReport& report);

std::string classify_text(const ReportConfig& config, const HomogeneityReport& report);
std::string verify_text(const ReportConfig& config, const VerificationReport& report);
std::string invariants_text(const HomogeneityReport& report);
/// Header "t,x,y,<invariant names...>"; undefined values are left empty.
std::string invariants_csv(const HomogeneityReport& report);

}  // namespace curvhom
