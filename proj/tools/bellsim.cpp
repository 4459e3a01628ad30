// bellsim: CHSH parameters of lossy entangled optical states.

#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "bellsim/app/config.hpp"
#include "bellsim/app/figures.hpp"
#include "bellsim/app/sweep.hpp"
#include "bellsim/app/table.hpp"
#include "bellsim/app/threshold.hpp"
#include "bellsim/app/validate.hpp"
#include "bellsim/errors.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitUnknownCommand = 4;

using namespace bellsim;

void emit_csv(const std::string& path, const std::string& title, const std::vector<app::PointResult>& rows,
              bool wall_time) {
  if (path.empty() || path == "-") {
    app::write_csv(std::cout, title, rows, wall_time);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw app::ConfigError(fmt::format("cannot write '{}'", path));
  app::write_csv(out, title, rows, wall_time);
}

}  // namespace

int main(int argc, char** argv) {
  const std::set<std::string> commands{"figure", "threshold", "sweep", "validate"};
  if (argc > 1 && argv[1][0] != '-' && !commands.contains(argv[1])) {
    std::cerr << fmt::format("bellsim: unknown command '{}' (expected figure, threshold, sweep or validate)\n",
                             argv[1]);
    return kExitUnknownCommand;
  }

  CLI::App cli{"CHSH Bell parameters of lossy entangled optical states"};
  cli.require_subcommand(1);

  auto* figure = cli.add_subcommand("figure", "Write the data of a figure as CSV");
  std::string figure_name, figure_out;
  app::FigureOptions figure_opts;
  figure->add_option("name", figure_name, "fig2a, fig2b, fig3, fig4a, fig4b, fig5a or fig5b")->required();
  figure->add_option("--out", figure_out, "Output path (default: stdout)");
  figure->add_option("--jobs", figure_opts.jobs, "Worker threads (default: all cores)")->check(CLI::NonNegativeNumber);
  figure->add_option("--points", figure_opts.points, "Points per axis");
  figure->add_flag("--wall-time", figure_opts.wall_time, "Add a wall_time column");

  auto* threshold = cli.add_subcommand("threshold", "Detection efficiency threshold as JSON");
  std::string family = "pol", engine = "auto";
  std::optional<int> n;
  std::optional<double> alpha, V, d;
  double eta1 = 1.0, tol = 1e-4;
  threshold->add_option("--family", family, "pol, ecs or ets")->check(CLI::IsMember({"pol", "ecs", "ets"}));
  threshold->add_option("--n", n, "Photon number (pol)");
  threshold->add_option("--alpha", alpha, "Coherent amplitude (ecs)");
  threshold->add_option("--V", V, "Thermal variance (ets)");
  threshold->add_option("--d", d, "Displacement (ets)");
  threshold->add_option("--eta1", eta1, "Transmittivity before the unitary");
  threshold->add_option("--tol", tol, "Tolerance in eta2");
  threshold->add_option("--engine", engine, "auto, closed_form or oracle");

  auto* sweep = cli.add_subcommand("sweep", "Optimize |B| over a parameter grid");
  std::string config_path;
  sweep->add_option("--config", config_path, "Config file")->required();

  auto* validate = cli.add_subcommand("validate", "Cross-check closed forms against oracles");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*figure) {
      const auto rows = app::run_figure(figure_name, figure_opts);
      emit_csv(figure_out, app::figure_title(figure_name), rows, figure_opts.wall_time);
    } else if (*threshold) {
      app::ThresholdRequest request;
      request.scenario.family = app::make_family(family, n, alpha, V, d);
      request.scenario.loss.eta_before = eta1;
      request.scenario.engine = app::parse_engine(engine);
      request.tol = tol;
      std::cout << app::run_threshold(request).dump(2) << '\n';
    } else if (*sweep) {
      const app::SweepConfig config = app::load_sweep_config(config_path);
      const auto rows = app::run_sweep(config);
      emit_csv(config.output_path, fmt::format("sweep: {}", config_path), rows, config.wall_time);
    } else if (*validate) {
      return app::report_validate(std::cout, app::run_validate());
    }
  } catch (const app::ConfigError& e) {
    std::cerr << "bellsim: " << e.what() << '\n';
    return kExitConfig;
  } catch (const PreconditionError& e) {
    std::cerr << "bellsim: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalError& e) {
    std::cerr << "bellsim: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
