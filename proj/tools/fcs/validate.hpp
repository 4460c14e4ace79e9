#pragma once

#include <string>
#include <vector>

#include "table.hpp"

namespace fcs::cli {

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// Runs the invariant suites of every module. `perturb_s` scales every
/// Bessel-sum coefficient by (1 + perturb_s) before use (fault injection).
std::vector<CheckResult> run_validation(double perturb_s = 0.0);

Table validation_table(const std::vector<CheckResult>& checks, double perturb_s);

}  // namespace fcs::cli
