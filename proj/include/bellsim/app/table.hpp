#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bellsim/bell.hpp"

namespace bellsim::app {

// One optimized grid point, as emitted by figures and sweeps.
struct PointSpec {
  bell::Scenario scenario;
  std::optional<double> gamma_t;  // set when eta1 came from exp(-gamma t)
};

struct PointResult {
  PointSpec spec;
  bell::BellResult result;
  double wall_time = 0.0;  // seconds
};

bell::BellResult evaluate_point(const PointSpec& spec, const bell::OptimizeOptions& options = {});

// Comma separated, '.' decimal, LF line endings; a '#' line with the title
// and a '#' line naming the columns.
void write_csv(std::ostream& out, const std::string& title, const std::vector<PointResult>& rows,
               bool wall_time);

std::string format_number(double x);

}  // namespace bellsim::app
