#include <array>
#include <cmath>
#include <numbers>

#include "bellsim/errors.hpp"
#include "bellsim/numerics.hpp"

namespace bellsim::numerics {
namespace {

using std::numbers::pi;

// Trapezoid step. Discretization error ~ exp(-pi^2/h^2) = 7e-18.
constexpr double kStep = 0.5;
// Nodes out to |t| = 7.5; exp(-56) is far below double resolution of w.
constexpr int kHalfWidth = 15;
constexpr int kNodes = 2 * kHalfWidth + 1;

struct Grid {
  std::array<double, kNodes> t{};
  std::array<double, kNodes> gauss{};
};

struct Grids {
  Grid integer;  // t_k = k h
  Grid shifted;  // t_k = (k + 1/2) h
};

const Grids& grids() {
  static const Grids g = [] {
    Grids out;
    for (int k = -kHalfWidth; k <= kHalfWidth; ++k) {
      const auto i = static_cast<std::size_t>(k + kHalfWidth);
      out.integer.t[i] = k * kStep;
      out.integer.gauss[i] = std::exp(-out.integer.t[i] * out.integer.t[i]);
      out.shifted.t[i] = (k + 0.5) * kStep;
      out.shifted.gauss[i] = std::exp(-out.shifted.t[i] * out.shifted.t[i]);
    }
    return out;
  }();
  return g;
}

Complex faddeeva_upper(Complex z) {
  const double x = z.real();
  const double y = z.imag();

  // Keep Re z at least h/4 away from every node so the pole of the sum and
  // the correction term never nearly cancel.
  const double frac = std::abs(x / kStep - std::round(x / kStep));
  const bool use_shifted = frac < 0.25;
  const Grid& grid = use_shifted ? grids().shifted : grids().integer;

  Complex sum = 0.0;
  for (std::size_t i = 0; i < grid.t.size(); ++i) {
    sum += grid.gauss[i] / (z - grid.t[i]);
  }
  Complex result = Complex(0.0, kStep / pi) * sum;

  if (y < pi / kStep) {
    const Complex phase = std::exp(Complex(0.0, -2.0 * pi / kStep) * z);
    const Complex denom = use_shifted ? 1.0 + phase : 1.0 - phase;
    result += 2.0 * std::exp(-z * z) / denom;
  }
  return result;
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

Complex erf_series(Complex z) {
  // 2/sqrt(pi) sum (-1)^n z^(2n+1) / (n! (2n+1)), used for |z| < 0.5.
  const Complex z2 = z * z;
  Complex term = z;
  Complex sum = z;
  for (int n = 1; n < 40; ++n) {
    term *= -z2 / static_cast<double>(n);
    const Complex contrib = term / static_cast<double>(2 * n + 1);
    sum += contrib;
    if (std::abs(contrib) < 1e-17 * std::abs(sum)) break;
  }
  return sum * (2.0 / std::sqrt(pi));
}

}  // namespace

Complex faddeeva(Complex z) {
  if (!finite(z)) throw PreconditionError("faddeeva: non-finite argument");
  if (z.imag() >= 0.0) return faddeeva_upper(z);

  const double log_mag = z.imag() * z.imag() - z.real() * z.real();
  if (log_mag > 700.0) {
    throw NumericalError("faddeeva: exp(-z^2) overflows in the lower half plane");
  }
  return 2.0 * std::exp(-z * z) - faddeeva_upper(-z);
}

Complex erf(Complex z) {
  if (!finite(z)) throw PreconditionError("erf: non-finite argument");
  if (z.real() < 0.0) return -erf(-z);

  Complex result;
  if (std::abs(z) < 0.5) {
    result = erf_series(z);
  } else {
    // erfc(z) = exp(-z^2) w(iz), and iz lies in the closed upper half plane.
    const double log_mag = z.imag() * z.imag() - z.real() * z.real();
    if (log_mag > 700.0) throw NumericalError("erf: result overflows");
    result = 1.0 - std::exp(-z * z) * faddeeva(Complex(-z.imag(), z.real()));
  }
  // erf is real on the real axis and imaginary on the imaginary axis.
  if (z.imag() == 0.0) result.imag(0.0);
  if (z.real() == 0.0) result.real(0.0);
  if (!finite(result)) throw NumericalError("erf: non-finite result");
  return result;
}

Complex erfi(Complex z) {
  const Complex iz(-z.imag(), z.real());
  const Complex e = erf(iz);
  return Complex(e.imag(), -e.real());
}

}  // namespace bellsim::numerics
