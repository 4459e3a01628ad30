#include "bellsim/app/figures.hpp"

#include <array>
#include <chrono>
#include <cmath>

#include <fmt/format.h>

#include "bellsim/app/config.hpp"
#include "bellsim/app/parallel.hpp"
#include "bellsim/thermal.hpp"

namespace bellsim::app {
namespace {

constexpr int kCurvePoints = 101;
constexpr int kSurfacePoints = 41;
constexpr double kFig5Eta1Pol = 0.95;
constexpr double kFig5Eta1Ecs = 0.85;
constexpr double kFig4aV = 10.0;
constexpr std::array<std::pair<double, double>, 3> kFig4bCurves{{{1.001, 5.0}, {10.0, 5.0}, {10.0, 10.0}}};

std::vector<double> linspace(double start, double stop, int steps) {
  return Axis{"", start, stop, steps}.values();
}

void check_name(const std::string& name) {
  for (const std::string& n : figure_names()) {
    if (n == name) return;
  }
  throw ConfigError(fmt::format("unknown figure '{}'", name));
}

std::vector<double> curves(const std::string& name) {
  if (name == "fig2a" || name == "fig2b") return {1, 2, 3, 4};
  if (name == "fig3") return {0.5, 1.0, 1.5, 2.0};
  if (name == "fig4a") return linspace(0.5, 5.0, kSurfacePoints);
  if (name == "fig4b") return {0, 1, 2};
  if (name == "fig5a") return {1, 2, 3};
  return {1.0, 1.5, 2.0};
}

}  // namespace

const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> names{"fig2a", "fig2b", "fig3", "fig4a", "fig4b", "fig5a", "fig5b"};
  return names;
}

std::string figure_title(const std::string& name) {
  check_name(name);
  if (name == "fig2a") return "fig2a: polarization states, loss after the unitary (eta1 = 1)";
  if (name == "fig2b") return "fig2b: polarization states, loss before the unitary (eta2 = 1)";
  if (name == "fig3") return "fig3: entangled coherent states, loss after the unitary (eta1 = 1)";
  if (name == "fig4a") return "fig4a: entangled thermal states, V = 10, decoherence gamma t before the unitary";
  if (name == "fig4b") return "fig4b: entangled thermal states, decoherence gamma t before the unitary";
  if (name == "fig5a") return "fig5a: polarization states, eta1 = 0.95";
  return "fig5b: entangled coherent states, eta1 = 0.85";
}

PointSpec figure_point(const std::string& name, double curve, double x) {
  check_name(name);
  PointSpec p;
  if (name == "fig2a" || name == "fig2b" || name == "fig5a") {
    const int n = static_cast<int>(std::lround(curve));
    p.scenario.family = bell::Polarization{n};
  } else if (name == "fig3" || name == "fig5b") {
    p.scenario.family = bell::Ecs{curve};
  } else if (name == "fig4a") {
    p.scenario.family = bell::Ets{kFig4aV, curve};
  } else {
    const auto index = static_cast<std::size_t>(std::lround(curve));
    if (index >= kFig4bCurves.size()) throw ConfigError("fig4b curve index must be 0, 1 or 2");
    p.scenario.family = bell::Ets{kFig4bCurves[index].first, kFig4bCurves[index].second};
  }

  if (name == "fig2a" || name == "fig3") {
    p.scenario.loss = {1.0, x};
  } else if (name == "fig2b") {
    p.scenario.loss = {x, 1.0};
  } else if (name == "fig5a") {
    p.scenario.loss = {kFig5Eta1Pol, x};
  } else if (name == "fig5b") {
    p.scenario.loss = {kFig5Eta1Ecs, x};
  } else {
    p.gamma_t = x;
    p.scenario.loss = {thermal::gamma_to_eta(x), 1.0};
  }
  return p;
}

std::vector<PointSpec> figure_grid(const std::string& name, int points) {
  check_name(name);
  if (points != 0 && points < 2) throw ConfigError("--points must be >= 2");
  const bool surface = name == "fig4a";
  const int steps = points != 0 ? points : (surface ? kSurfacePoints : kCurvePoints);
  const std::vector<double> xs = linspace(0.0, 1.0, steps);
  const std::vector<double> cs = surface ? linspace(0.5, 5.0, steps) : curves(name);
  std::vector<PointSpec> grid;
  grid.reserve(cs.size() * xs.size());
  for (double c : cs) {
    for (double x : xs) grid.push_back(figure_point(name, c, x));
  }
  return grid;
}

std::vector<PointResult> run_figure(const std::string& name, const FigureOptions& options) {
  const std::vector<PointSpec> grid = figure_grid(name, options.points);
  const int jobs = options.jobs > 0 ? options.jobs : default_jobs();
  return parallel_map<PointResult>(grid.size(), jobs, [&](std::size_t i) {
    const auto start = std::chrono::steady_clock::now();
    PointResult r{grid[i], evaluate_point(grid[i]), 0.0};
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
  });
}

}  // namespace bellsim::app
