#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace bellsim::app {

enum class CheckStatus { pass, warn, fail };

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

// Replacement hooks for fault injection in tests. Empty means the library
// function is used.
struct ValidateOptions {
  std::function<double(int n, double theta_a, double theta_b, double eta)> analytic_ep;
  std::function<double(double alpha, double theta_a, double theta_b, double eta1, double eta2)>
      correlation_ecs;
};

std::vector<CheckResult> run_validate(const ValidateOptions& options = {});

/// One line per check; returns the exit code (0 unless some check failed).
int report_validate(std::ostream& out, const std::vector<CheckResult>& results);

}  // namespace bellsim::app
