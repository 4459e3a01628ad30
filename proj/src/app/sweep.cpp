#include "bellsim/app/sweep.hpp"

#include <chrono>
#include <cmath>

#include <fmt/format.h>

#include "bellsim/app/parallel.hpp"
#include "bellsim/errors.hpp"
#include "bellsim/thermal.hpp"

namespace bellsim::app {
namespace {

void assign(PointSpec& p, const std::string& axis, double value) {
  bell::Scenario& s = p.scenario;
  if (axis == "eta1") {
    s.loss.eta_before = value;
  } else if (axis == "eta2") {
    s.loss.eta_after = value;
  } else if (axis == "gamma_t") {
    if (!(value >= 0.0)) throw ConfigError(fmt::format("gamma_t must be >= 0, got {}", value));
    p.gamma_t = value;
    s.loss.eta_before = thermal::gamma_to_eta(value);
  } else if (axis == "n") {
    const double rounded = std::round(value);
    if (rounded != value) throw ConfigError(fmt::format("axis n produced the non-integer value {}", value));
    s.family = make_family("pol", static_cast<int>(rounded), {}, {}, {});
  } else if (axis == "alpha") {
    s.family = make_family("ecs", {}, value, {}, {});
  } else {
    auto ets = std::get<bell::Ets>(s.family);
    (axis == "V" ? ets.V : ets.d) = value;
    s.family = make_family("ets", {}, {}, ets.V, ets.d);
  }
}

}  // namespace

std::vector<PointSpec> sweep_grid(const SweepConfig& config) {
  std::vector<PointSpec> grid{PointSpec{config.scenario, std::nullopt}};
  for (const Axis& axis : config.axes) {
    std::vector<PointSpec> next;
    next.reserve(grid.size() * static_cast<std::size_t>(axis.steps));
    for (const PointSpec& p : grid) {
      for (double v : axis.values()) {
        PointSpec q = p;
        assign(q, axis.name, v);
        next.push_back(q);
      }
    }
    grid = std::move(next);
  }
  for (const PointSpec& p : grid) {
    try {
      p.scenario.loss.validate();
    } catch (const PreconditionError& e) {
      throw ConfigError(e.what());
    }
  }
  return grid;
}

std::vector<PointResult> run_sweep(const SweepConfig& config) {
  const std::vector<PointSpec> grid = sweep_grid(config);
  const int jobs = config.jobs > 0 ? config.jobs : default_jobs();
  return parallel_map<PointResult>(grid.size(), jobs, [&](std::size_t i) {
    const auto start = std::chrono::steady_clock::now();
    PointResult r{grid[i], evaluate_point(grid[i], config.optimizer), 0.0};
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
  });
}

}  // namespace bellsim::app
