#pragma once

#include <vector>

#include "bellsim/app/config.hpp"
#include "bellsim/app/table.hpp"

namespace bellsim::app {

/// Cartesian product of the axes, first axis outermost.
std::vector<PointSpec> sweep_grid(const SweepConfig& config);

std::vector<PointResult> run_sweep(const SweepConfig& config);

}  // namespace bellsim::app
