#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bellsim/catstates.hpp"
#include "bellsim/errors.hpp"
#include "bellsim/thermal.hpp"
#include "oracles/thermal_brute.hpp"

using bellsim::Complex;
namespace th = bellsim::thermal;

TEST_SUITE("thermal") {
  TEST_CASE("thermal parameters") {
    const th::ThermalParams p = th::ThermalParams::from_mean_photons(30.0, 5.0);
    CHECK(p.V == doctest::Approx(11.0));
    CHECK(p.mean_photons() == doctest::Approx(30.0));
    CHECK_THROWS_AS(th::ThermalParams::from_mean_photons(10.0, 5.0), bellsim::PreconditionError);
    CHECK_THROWS_AS((th::ThermalParams{10.0, 0.0}.validate()), bellsim::PreconditionError);
  }

  TEST_CASE("gamma_to_eta") {
    CHECK(th::gamma_to_eta(0.0) == 1.0);
    CHECK(th::gamma_to_eta(std::log(2.0)) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(th::gamma_to_eta(-0.1), bellsim::PreconditionError);
  }

  TEST_CASE("closed-form helper identities") {
    const th::EtsHelpers h{{10.0, 5.0}, 0.9};
    for (double t : {0.05, 0.3, 1.2}) {
      CHECK(std::abs(h.f(+1, t) - std::conj(h.f(-1, t))) < 1e-14);
      CHECK(h.g(-t) == -h.g(t));
      CHECK(h.log_h(-t) == h.log_h(t));
    }
    CHECK(h.s(0.0) == 1.0);
    CHECK(h.s(-0.2) == -1.0);
  }

  TEST_CASE("closed form stays finite for large displacements") {
    const th::ClosedFormValue v = th::cets_closed_form(0.2, -0.1, {1.001, 10.0}, 1.0);
    CHECK(std::isfinite(v.value));
    CHECK(std::isfinite(v.imag_residue));
    CHECK_THROWS_AS(th::cets_closed_form(0.2, 0.1, {10.0, 5.0}, 0.0), bellsim::PreconditionError);
  }

  TEST_CASE("quadrature reduces to the ECS in the V -> 1 limit") {
    for (auto [ta, tb] : {std::pair{0.3, -0.2}, std::pair{0.7, 0.1}}) {
      const double ets = th::cets_quadrature(ta, tb, {1.0001, 1.0}, 1.0);
      CHECK(std::abs(ets - bellsim::catstates::correlation_ecs(1.0, ta, tb, {})) < 2e-3);
    }
  }

  TEST_CASE("quadrature probabilities are normalized") {
    const th::EtsQuadrature q({10.0, 5.0}, {1.0, 0.9}, 32);
    CHECK(std::abs(q.probabilities(0.1, 0.05).total() - 1.0) < 1e-6);
    CHECK(std::abs(q.probabilities(-0.7, 1.2).total() - 1.0) < 1e-6);
    // The analytic N_+ normalizes the integral as well.
    CHECK(q.normalization_defect() < 1e-6);
  }

  TEST_CASE("quadrature converges with order") {
    const th::ThermalParams p{10.0, 5.0};
    const bellsim::LossPlacement loss{0.95, 0.9};
    const double c16 = th::EtsQuadrature(p, loss, 16).correlation(0.1, 0.05);
    const double c24 = th::EtsQuadrature(p, loss, 24).correlation(0.1, 0.05);
    const double c32 = th::EtsQuadrature(p, loss, 32).correlation(0.1, 0.05);
    CHECK(std::abs(c24 - c32) < std::abs(c16 - c24));
    CHECK_THROWS_AS(th::cets_quadrature(0.1, 0.05, p, 0.9, 4), bellsim::PreconditionError);
  }

  TEST_CASE("factorized quadrature against brute-force 4-D integration") {
    const double V = 3.0, d = 1.5;
    const bellsim::LossPlacement loss{0.9, 0.8};
    for (auto [ta, tb] : {std::pair{0.25, -0.4}, std::pair{-0.9, 0.6}}) {
      const oracles::BruteEts brute = oracles::ets_brute_force(V, d, loss.eta_before, loss.eta_after, ta, tb, 24);
      const double quad = th::cets_quadrature(ta, tb, {V, d}, loss);
      CAPTURE(ta);
      CHECK(std::abs(brute.correlation - quad) < 1e-5);
      CHECK(brute.trace * th::n_plus({V, d}) == doctest::Approx(1.0).epsilon(1e-5));
    }
  }
}
