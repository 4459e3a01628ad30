#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "bellsim/app/table.hpp"

namespace bellsim::app {

struct FigureOptions {
  int jobs = 0;        // 0: hardware concurrency
  int points = 0;      // points per axis; 0 keeps the default (101, or 41 for fig4a)
  bool wall_time = false;
};

const std::vector<std::string>& figure_names();
std::string figure_title(const std::string& name);

/// Grid of the named figure in output order, curves outermost.
/// Throws ConfigError for an unknown name.
std::vector<PointSpec> figure_grid(const std::string& name, int points = 0);

/// Single point of a figure: the curve with parameter `curve` at abscissa `x`
/// (eta2, eta1 or gamma t). For fig4a `curve` is d; for fig4b it indexes the
/// (V, d) pairs 0..2.
PointSpec figure_point(const std::string& name, double curve, double x);

std::vector<PointResult> run_figure(const std::string& name, const FigureOptions& options = {});

}  // namespace bellsim::app
