#include <cmath>
#include <numbers>
#include <string>

#include "bellsim/errors.hpp"
#include "bellsim/numerics.hpp"

namespace bellsim::numerics {
namespace {

constexpr int kMaxOrder = 128;
constexpr int kMaxNewton = 50;

void check_order(int order, const char* what) {
  if (order < 1 || order > kMaxOrder) {
    throw PreconditionError(std::string(what) + ": order must lie in [1, 128], got " +
                            std::to_string(order));
  }
}

}  // namespace

QuadratureRule gauss_hermite(int order) {
  check_order(order, "gauss_hermite");
  const int n = order;
  const double pim4 = std::pow(std::numbers::pi, -0.25);

  std::vector<double> x(n), w(n);
  const int half = (n + 1) / 2;
  double z = 0.0;
  for (int i = 0; i < half; ++i) {
    // Asymptotic starting guesses for the i-th largest root.
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * x[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * x[1];
    } else {
      z = 2.0 * z - x[i - 2];
    }

    double derivative = 0.0;
    bool converged = false;
    for (int it = 0; it < kMaxNewton; ++it) {
      // Orthonormal Hermite recurrence.
      double p1 = pim4;
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
      }
      derivative = std::sqrt(2.0 * n) * p2;
      const double step = p1 / derivative;
      z -= step;
      if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) {
        converged = true;
        break;
      }
    }
    if (!converged) throw NumericalError("gauss_hermite: Newton iteration did not converge");
    x[i] = z;
    x[n - 1 - i] = -z;
    w[i] = w[n - 1 - i] = 2.0 / (derivative * derivative);
  }
  if (n % 2 == 1) x[n / 2] = 0.0;

  QuadratureRule rule;
  rule.nodes.assign(x.rbegin(), x.rend());
  rule.weights.assign(w.rbegin(), w.rend());
  return rule;
}

QuadratureRule gauss_legendre(int order) {
  check_order(order, "gauss_legendre");
  const int n = order;
  std::vector<double> x(n), w(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double derivative = 0.0;
    bool converged = false;
    for (int it = 0; it < kMaxNewton; ++it) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
      }
      derivative = n * (z * p1 - p2) / (z * z - 1.0);
      const double step = p1 / derivative;
      z -= step;
      if (std::abs(step) <= 1e-15) {
        converged = true;
        break;
      }
    }
    if (!converged) throw NumericalError("gauss_legendre: Newton iteration did not converge");
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * derivative * derivative);
  }
  if (n % 2 == 1) x[n / 2] = 0.0;

  return QuadratureRule{std::move(x), std::move(w)};
}

}  // namespace bellsim::numerics
