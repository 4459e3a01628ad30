#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bellsim/bell.hpp"
#include "bellsim/catstates.hpp"
#include "bellsim/fockspace.hpp"
#include "bellsim/thermal.hpp"
#include "oracles/series.hpp"

namespace bl = bellsim::bell;
using bellsim::LossPlacement;

namespace {
constexpr double kTsirelson = 2.0 * std::numbers::sqrt2;
}

TEST_SUITE("bell") {
  TEST_CASE("chsh combination") {
    const bl::AngleSet angles{0.0, 3 * std::numbers::pi / 8, std::numbers::pi / 4, -3 * std::numbers::pi / 8};
    const double b = bl::chsh([](double a, double c) { return -std::cos(2.0 * (a + c)); }, angles);
    CHECK(std::abs(b - kTsirelson) < 1e-12);
    CHECK(bl::chsh([](double, double) { return 0.0; }, angles) == 0.0);
    CHECK(bl::chsh([](double, double) { return 1.0; }, angles) == 2.0);
  }

  TEST_CASE("canonical angles lie in [-pi/2, pi/2)") {
    const bl::AngleSet c = bl::canonicalize({1.7, -1.7, std::numbers::pi / 2, 10.0});
    for (double t : {c.theta_a, c.theta_b, c.theta_a_prime, c.theta_b_prime}) {
      CHECK(t >= -std::numbers::pi / 2);
      CHECK(t < std::numbers::pi / 2);
    }
    CHECK(c.theta_a == doctest::Approx(1.7 - std::numbers::pi));
  }

  TEST_CASE("trig surface reproduces every engine exactly") {
    const std::vector<bl::Scenario> scenarios{
        {bl::Polarization{2}, {0.8, 0.7}},
        {bl::Ecs{1.2}, {0.9, 0.6}},
        {bl::Ets{4.0, 2.0}, {0.9, 0.9}},
    };
    for (const bl::Scenario& s : scenarios) {
      const bl::Correlation e = bl::make_correlation(s);
      const bl::TrigSurface surface = bl::TrigSurface::fit(e);
      for (auto [ta, tb] : {std::pair{0.13, -0.71}, std::pair{1.4, 0.9}}) CHECK(std::abs(surface(ta, tb) - e(ta, tb)) < 1e-10);
      const bl::AngleSet a{0.2, -0.3, 0.8, 0.5};
      CHECK(std::abs(surface.chsh(a) - bl::chsh(e, a)) < 1e-10);
    }
  }

  TEST_CASE("engines resolve as documented") {
    CHECK(bl::resolve_engine({bl::Polarization{1}, {1.0, 0.5}}) == bl::Engine::closed_form);
    CHECK(bl::resolve_engine({bl::Polarization{1}, {0.9, 0.5}}) == bl::Engine::oracle);
    CHECK(bl::resolve_engine({bl::Ecs{1.0}, {}}) == bl::Engine::closed_form);
    CHECK(bl::resolve_engine({bl::Ets{10.0, 5.0}, {}}) == bl::Engine::oracle);
    CHECK_THROWS_AS(bl::make_correlation({bl::Polarization{1}, {0.9, 1.0}, bl::Engine::closed_form}),
                    bellsim::PreconditionError);
  }

  TEST_CASE("optimizer reaches Tsirelson for one photon without loss") {
    const bl::BellResult r = bl::optimize_chsh(bl::Scenario{bl::Polarization{1}, {}});
    CHECK(std::abs(r.b_max - kTsirelson) < 1e-6);
    CHECK(r.n_restarts == 512);
    CHECK(r.engine_used == "closed_form_p");
    // The same through the generic path on the raw correlation.
    const bl::BellResult g = bl::optimize_chsh([](double a, double b) { return bellsim::fockspace::analytic_Ep(1, a, b, 1.0); });
    CHECK(std::abs(g.b_max - kTsirelson) < 1e-6);
  }

  TEST_CASE("closed-form b_max") {
    CHECK(bl::closed_form_bmax_p(3, 1.0) == doctest::Approx(kTsirelson));
    CHECK(bl::closed_form_bmax_p(3, 0.0) == doctest::Approx(2.0));
    for (int n = 1; n <= 4; ++n) {
      CHECK(bl::closed_form_threshold_p(n) == doctest::Approx(oracles::polarization_threshold(n)).epsilon(1e-14));
      CHECK(bl::closed_form_bmax_p(n, bl::closed_form_threshold_p(n)) == doctest::Approx(2.0).epsilon(1e-12));
    }
    CHECK(bl::closed_form_threshold_p(1) == doctest::Approx(0.8284).epsilon(1e-4));
    CHECK(bl::closed_form_threshold_p(4) == doctest::Approx(0.3564).epsilon(1e-3));
  }

  TEST_CASE("optimized polarization b_max at the reported n = 4 threshold") {
    const bl::BellResult r = bl::optimize_chsh(bl::Scenario{bl::Polarization{4}, {1.0, 0.356}});
    CHECK(std::abs(r.b_max - 2.0) < 5e-3);
  }

  TEST_CASE("threshold search for polarization states") {
    const bl::ThresholdResult one = bl::threshold_eta2({bl::Polarization{1}, {}});
    CHECK(one.status == bl::ThresholdStatus::found);
    CHECK(std::abs(one.eta_star - 0.8284) < 1e-3);
    REQUIRE(one.prescan.size() == 11);
    CHECK(one.prescan.front().second == doctest::Approx(2.0));
    const bl::ThresholdResult two = bl::threshold_eta2({bl::Polarization{2}, {}});
    CHECK(std::abs(two.eta_star - oracles::polarization_threshold(2)) < 1e-3);
  }

  TEST_CASE("threshold search reports a missing violation") {
    // Enough pre-unitary loss that no detection efficiency recovers a violation.
    const bl::ThresholdResult r = bl::threshold_eta2({bl::Ecs{2.0}, {0.3, 1.0}});
    CHECK(r.status == bl::ThresholdStatus::no_threshold);
    CHECK(std::isnan(r.eta_star));
  }

  TEST_CASE("ECS optimum is symmetric and bounded") {
    const bl::BellResult r = bl::optimize_chsh(bl::Scenario{bl::Ecs{1.0}, {}});
    CHECK(r.b_max > 2.0);
    CHECK(r.b_max <= kTsirelson + 1e-6);
    CHECK(r.engine_used == "dyad_algebra");
  }

  TEST_CASE("ETS oracle raises the quadrature order where 32 and 40 disagree") {
    const bl::Correlation e = bl::make_correlation({bl::Ets{10.0, 0.725}, {}});
    const double reference = bellsim::thermal::EtsQuadrature({10.0, 0.725}, {}, 56).correlation(0.0, 0.0);
    CHECK(std::abs(e(0.0, 0.0) - reference) < 1e-4);
  }
}
