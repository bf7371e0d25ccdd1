#pragma once

#include <optional>
#include <string>
#include <vector>

#include "l2ext/cli/config.hpp"
#include "l2ext/cli/report.hpp"

namespace l2ext::cli {

/// A catalog weight paired with the inequality that gates it: c_A_delta when
/// delta is set, c_A otherwise.
struct OdeCase {
  std::string weight;
  std::optional<double> delta;
  bool admissible = true;
};

/// Every cataloged weight exercised by the ODE suite, the bump last.
std::vector<OdeCase> ode_cases();

/// Runs one named suite. Module errors are caught and recorded as failed
/// checks; this function only throws Config for an unknown suite name.
SuiteReport run_suite(const std::string& name, const RunConfig& cfg);

}  // namespace l2ext::cli
