#include <doctest.h>

#include <cmath>
#include <sstream>

#include "bellsim/app/config.hpp"
#include "bellsim/app/figures.hpp"
#include "bellsim/app/sweep.hpp"
#include "bellsim/app/table.hpp"
#include "bellsim/app/threshold.hpp"
#include "bellsim/app/validate.hpp"
#include "bellsim/fockspace.hpp"

namespace app = bellsim::app;
namespace bl = bellsim::bell;

namespace {

app::SweepConfig parse(const std::string& text) {
  std::istringstream in(text);
  return app::parse_sweep_config(in, "test.ini");
}

const char* kSmallSweep = R"(# two axes
[scenario]
family = pol
n = 1
eta1 = 1.0

[axis.eta2]
start = 0.5
stop = 1.0
steps = 3

[axis.n]
start = 1
stop = 2
steps = 2

[options]
jobs = 1
starts_per_axis = 2
)";

}  // namespace

TEST_SUITE("app") {
  TEST_CASE("config parse errors") {
    CHECK_THROWS_AS(parse("[scenario]\nfamily = pol\nn = 1\n"), app::ConfigError);  // no axis
    CHECK_THROWS_AS(parse("family = pol\n"), app::ConfigError);
    CHECK_THROWS_AS(parse("[scenario\nfamily = pol\n"), app::ConfigError);
    CHECK_THROWS_AS(parse("[scenario]\nfamily = pol\nfamily = ecs\n"), app::ConfigError);
    CHECK_THROWS_AS(parse("[scenario]\nfamily = cat\n[axis.eta2]\nstart=0\nstop=1\nsteps=3\n"), app::ConfigError);
    CHECK_THROWS_AS(parse("[scenario]\nfamily = pol\nn = 1\ncolour = red\n[axis.eta2]\nstart=0\nstop=1\nsteps=3\n"),
                    app::ConfigError);
    CHECK_THROWS_AS(parse("[scenario]\nfamily = pol\nn = 1\n[axis.alpha]\nstart=0\nstop=1\nsteps=3\n"),
                    app::ConfigError);
    CHECK_THROWS_AS(parse("[scenario]\nfamily = pol\nn = 1\n[axis.eta2]\nstart=0\nstop=x\nsteps=3\n"),
                    app::ConfigError);
    CHECK_THROWS_AS(parse("[scenario]\nfamily = pol\nn = 1\n[axis.eta2]\nstart=0\nstop=1\nsteps=1\n"),
                    app::ConfigError);
    CHECK_THROWS_AS(parse("[scenario]\nfamily = ets\nV = 2\nd = 1\n[axis.eta1]\nstart=0\nstop=1\nsteps=2\n"
                          "[axis.gamma_t]\nstart=0\nstop=1\nsteps=2\n"),
                    app::ConfigError);
    CHECK_THROWS_AS(parse(std::string(kSmallSweep) + "[extra]\nx = 1\n"), app::ConfigError);
    CHECK_THROWS_AS(app::load_sweep_config("/nonexistent/sweep.ini"), app::ConfigError);
  }

  TEST_CASE("axis values include both endpoints") {
    const app::Axis axis{"eta2", 0.1, 0.7, 4};
    const auto v = axis.values();
    REQUIRE(v.size() == 4);
    CHECK(v.front() == 0.1);
    CHECK(v.back() == 0.7);
    CHECK(v[1] == doctest::Approx(0.3));
  }

  TEST_CASE("sweep grid is the product of the axes") {
    const app::SweepConfig config = parse(kSmallSweep);
    CHECK(config.axes.size() == 2);
    const auto grid = app::sweep_grid(config);
    REQUIRE(grid.size() == 6);
    // First axis outermost.
    CHECK(grid[0].scenario.loss.eta_after == 0.5);
    CHECK(std::get<bl::Polarization>(grid[1].scenario.family).n == 2);
    CHECK(grid[2].scenario.loss.eta_after == 0.75);
  }

  TEST_CASE("sweep output is deterministic") {
    const app::SweepConfig config = parse(kSmallSweep);
    std::ostringstream first, second;
    app::write_csv(first, "sweep", app::run_sweep(config), false);
    app::write_csv(second, "sweep", app::run_sweep(config), false);
    CHECK(first.str() == second.str());

    const std::string text = first.str();
    CHECK(text.find('\r') == std::string::npos);
    std::istringstream lines(text);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "# sweep");
    std::getline(lines, line);
    CHECK(line ==
          "# family,n,alpha,V,d,eta1,eta2,gamma_t,b_max,theta_a,theta_b,theta_a_prime,theta_b_prime,engine,converged");
    int rows = 0;
    while (std::getline(lines, line)) {
      ++rows;
      CHECK(line.starts_with("pol,"));
      CHECK(std::count(line.begin(), line.end(), ',') == 14);
    }
    CHECK(rows == 6);
  }

  TEST_CASE("number formatting") {
    CHECK(app::format_number(0.5) == "0.5");
    CHECK(app::format_number(2.8284271247461903) == "2.828427125");
  }

  TEST_CASE("threshold json") {
    const auto found = app::run_threshold({bl::Scenario{bl::Polarization{1}, {}}, 1e-4});
    CHECK(found["status"] == "found");
    CHECK(std::abs(found["eta_star"].get<double>() - 0.8284) < 1e-3);
    CHECK(found["prescan"].size() == 11);
    CHECK(found["scenario"]["family"] == "pol");
    std::string keys;
    for (const auto& [k, v] : found.items()) keys += k + " ";
    CHECK(keys == "status eta_star tol scenario prescan ");

    const auto none = app::run_threshold({bl::Scenario{bl::Ecs{2.0}, {0.3, 1.0}}, 1e-4});
    CHECK(none["status"] == "no_threshold");
    CHECK(none["eta_star"].is_null());
  }

  TEST_CASE("validate catches an injected fault") {
    app::ValidateOptions broken;
    broken.analytic_ep = [](int n, double ta, double tb, double eta) {
      return bellsim::fockspace::analytic_Ep(n, ta, tb, eta) + 1e-6;
    };
    const auto results = app::run_validate(broken);
    bool flagged = false;
    for (const app::CheckResult& r : results) {
      if (r.name == "fockspace_vs_closed_form") flagged = r.status == app::CheckStatus::fail;
    }
    CHECK(flagged);
    std::ostringstream out;
    CHECK(app::report_validate(out, results) == 3);
    CHECK(out.str().find("FAIL fockspace_vs_closed_form") != std::string::npos);
  }

  TEST_CASE("figure catalogue") {
    const auto& names = app::figure_names();
    CHECK(names.size() == 7);
    CHECK_THROWS_AS(app::figure_grid("fig9"), app::ConfigError);
    CHECK(app::figure_grid("fig2a", 11).size() == 44);
    CHECK(app::figure_grid("fig4a", 5).size() == 25);
    const app::PointSpec p = app::figure_point("fig4b", 1, 0.1);
    CHECK(p.gamma_t.has_value());
    CHECK(p.scenario.loss.eta_before == doctest::Approx(std::exp(-0.1)));
  }
}
