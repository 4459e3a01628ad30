#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bellsim/errors.hpp"
#include "bellsim/numerics.hpp"
#include "oracles/series.hpp"

using bellsim::Complex;
namespace nm = bellsim::numerics;

namespace {

double rel_err(Complex got, Complex want) { return std::abs(got - want) / std::abs(want); }

struct Frozen {
  Complex z;
  Complex w;
};

// mpmath, 30 digits
const Frozen kFaddeeva[] = {
    {{0.0, 1.0}, {0.427583576155807, 0.0}},
    {{1.0, 2.0}, {0.2184926152748907, 0.092997809392601866}},
    {{0.3, 0.4}, {0.63299603234343977, 0.17020263553343031}},
    {{5.0, 0.1}, {0.002406911716942712, 0.11519442455072769}},
    {{-3.0, 0.5}, {0.037126366054692345, -0.19298375530036209}},
    {{20.0, 20.0}, {0.014113538470519281, 0.01409590764933707}},
    {{0.1, -0.2}, {1.2566938731503851, 0.16244298499632387}},
    {{2.0, -1.0}, {-0.20532558064658751, 0.14685548503016739}},
    {{29.0, 1e-3}, {6.7205573146468208e-7, 0.019466400370366567}},
    {{1e-3, 0.0}, {0.9999990000005, 0.0011283784148430354}},
    {{6.0, 0.0}, {2.3195228302435694e-16, 0.095396208969110766}},
};

const Frozen kErf[] = {
    {{1.0, 0.0}, {0.84270079294971487, 0.0}},
    {{0.2, 0.3}, {0.24309725370761817, 0.33444332344304492}},
    {{2.0, 1.0}, {1.0036063427256518, -0.011259006028815025}},
    {{-1.5, 0.7}, {-1.0404046154368714, 0.033625498125576172}},
    {{3.0, -2.0}, {0.99896327885681727, 1.1546724379290603e-5}},
    {{0.0, 0.4}, {0.0, 0.4766246396513397}},
};

}  // namespace

TEST_SUITE("numerics") {
  TEST_CASE("faddeeva at the origin and on the imaginary axis") {
    CHECK(std::abs(nm::faddeeva({0.0, 0.0}) - 1.0) < 1e-15);
    CHECK(nm::faddeeva({0.0, 1.0}).real() == doctest::Approx(oracles::scaled_erfc(1.0)).epsilon(1e-13));
    for (double y : {0.1, 0.5, 2.0, 3.0}) {
      CHECK(nm::faddeeva({0.0, y}).real() == doctest::Approx(oracles::scaled_erfc(y)).epsilon(1e-12));
    }
  }

  TEST_CASE("faddeeva matches frozen high-precision values") {
    for (const Frozen& f : kFaddeeva) {
      CAPTURE(f.z);
      CHECK(rel_err(nm::faddeeva(f.z), f.w) < 1e-12);
    }
  }

  TEST_CASE("faddeeva reflection symmetry w(-conj z) = conj w(z)") {
    const Complex z(1.0, 2.0);
    CHECK(std::abs(nm::faddeeva(-std::conj(z)) - std::conj(nm::faddeeva(z))) < 1e-15);
  }

  TEST_CASE("faddeeva rejects non-finite input") {
    CHECK_THROWS_AS(nm::faddeeva({std::nan(""), 0.0}), bellsim::PreconditionError);
    CHECK_THROWS_AS(nm::faddeeva({0.0, INFINITY}), bellsim::PreconditionError);
  }

  TEST_CASE("erf against frozen values and the series oracle") {
    CHECK(nm::erf({0.0, 0.0}) == Complex(0.0, 0.0));
    for (const Frozen& f : kErf) {
      CAPTURE(f.z);
      CHECK(std::abs(nm::erf(f.z) - f.w) < 1e-13 * std::max(1.0, std::abs(f.w)));
    }
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.5, 2.5);
    for (int i = 0; i < 50; ++i) {
      const Complex z(u(rng), u(rng));
      CAPTURE(z);
      const Complex want = oracles::erf_series(z);
      CHECK(std::abs(nm::erf(z) - want) < 1e-12 * std::max(1.0, std::abs(want)));
    }
  }

  TEST_CASE("erfi is -i erf(iz) and real on the real axis") {
    const Complex i(0.0, 1.0);
    for (Complex z : {Complex(1.5, 0.0), Complex(0.3, -0.2), Complex(-2.0, 1.0)}) {
      CHECK(nm::erfi(z) == -i * nm::erf(i * z));
    }
    CHECK(nm::erfi(1.5).real() == doctest::Approx(4.5847332572844269).epsilon(1e-14));
    for (double x : {-2.0, -1.0, 0.0, 1.0, 2.0}) CHECK(nm::erfi(x).imag() == 0.0);
  }

  TEST_CASE("gauss_hermite rules") {
    const nm::QuadratureRule one = nm::gauss_hermite(1);
    REQUIRE(one.order() == 1);
    CHECK(one.nodes[0] == doctest::Approx(0.0));
    CHECK(one.weights[0] == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-15));

    const nm::QuadratureRule five = nm::gauss_hermite(5);
    double m8 = 0.0;
    for (int k = 0; k < 5; ++k) m8 += five.weights[k] * std::pow(five.nodes[k], 8);
    CHECK(std::abs(m8 - 105.0 * std::sqrt(std::numbers::pi) / 16.0) < 1e-12);

    for (int order : {16, 64, 128}) {
      const nm::QuadratureRule r = nm::gauss_hermite(order);
      double total = 0.0;
      for (double w : r.weights) total += w;
      CHECK(std::abs(total - std::sqrt(std::numbers::pi)) < 1e-12);
      for (int k = 1; k < order; ++k) CHECK(r.nodes[k] > r.nodes[k - 1]);
    }
    CHECK_THROWS_AS(nm::gauss_hermite(0), bellsim::PreconditionError);
    CHECK_THROWS_AS(nm::gauss_hermite(129), bellsim::PreconditionError);
  }

  TEST_CASE("gauss_legendre integrates polynomials") {
    const nm::QuadratureRule r = nm::gauss_legendre(10);
    double s = 0.0;
    for (int k = 0; k < 10; ++k) s += r.weights[k] * std::pow(r.nodes[k], 18);
    CHECK(s == doctest::Approx(2.0 / 19.0).epsilon(1e-14));
  }

  TEST_CASE("minimize_simplex on quadratics") {
    const auto r1 = nm::minimize_simplex([](std::span<const double> x) { return (x[0] - 3.0) * (x[0] - 3.0); },
                                         std::vector<double>{0.0}, {1e-10, 5000, 0.5});
    CHECK(r1.converged);
    CHECK(std::abs(r1.point[0] - 3.0) < 1e-9);

    const auto r2 = nm::minimize_simplex(
        [](std::span<const double> x) { return x[0] * x[0] + x[1] * x[1]; }, std::vector<double>{1.0, 1.0},
        {1e-10, 5000, 0.5});
    CHECK(std::abs(r2.point[0]) < 1e-9);
    CHECK(std::abs(r2.point[1]) < 1e-9);
    CHECK(r2.value == r2.point[0] * r2.point[0] + r2.point[1] * r2.point[1]);
  }

  TEST_CASE("minimize_simplex reports non-convergence without throwing") {
    const auto r = nm::minimize_simplex([](std::span<const double> x) { return std::cos(x[0]) + x[1] * x[1]; },
                                        std::vector<double>{0.3, 2.0}, {1e-14, 5, 0.5});
    CHECK_FALSE(r.converged);
    CHECK(r.iterations == 5);
  }

  TEST_CASE("minimize_simplex dimension guard") {
    CHECK_THROWS_AS(nm::minimize_simplex([](std::span<const double>) { return 0.0; }, std::vector<double>(9, 0.0)),
                    bellsim::PreconditionError);
  }

  TEST_CASE("bisect") {
    CHECK(std::abs(nm::bisect([](double x) { return x - 0.5; }, 0.0, 1.0, 1e-6) - 0.5) < 1e-6);
    try {
      nm::bisect([](double x) { return x + 2.0; }, 0.0, 1.0, 1e-6);
      FAIL("expected an invalid-bracket error");
    } catch (const bellsim::PreconditionError& e) {
      const std::string what = e.what();
      CHECK(what.find('2') != std::string::npos);
      CHECK(what.find('3') != std::string::npos);
    }
  }
}
