#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "sel/quasiprob/residuals.hpp"

namespace sel::app {

enum class ValidationLevel { kQuick, kFull };

struct ValidationOptions {
  ValidationLevel level = ValidationLevel::kQuick;
  /// Applied to every ode5 coefficient set before use. Lets a test
  /// corrupt a coefficient and watch the residual check fail.
  std::function<void(quasiprob::OdeCoefficients&)> mutate_ode;
};

struct CheckResult {
  int criterion = 0;
  std::string name;
  double measured = 0.0;
  std::string bound;  // human-readable, e.g. "<= 1e-08"
  bool passed = false;
  std::vector<std::string> detail;
  /// Diagnostics are reported but never fail the run.
  bool hard = true;
};

struct ValidationReport {
  ValidationLevel level = ValidationLevel::kQuick;
  std::vector<CheckResult> checks;

  /// Every hard check passed.
  bool passed() const;
  bool criterion_passed(int criterion) const;
  void write(std::ostream& out) const;
};

ValidationReport run_validation(const ValidationOptions& options = {});

}  // namespace sel::app
