#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace bellsim {

using Complex = std::complex<double>;

namespace numerics {

/// Faddeeva function w(z) = exp(-z^2) erfc(-iz).
///
/// Upper half plane: trapezoid rule on the integral representation
/// (i/pi) int exp(-t^2)/(z-t) dt with the pole correction term, which
/// converges like exp(-pi^2/h^2). Lower half plane by reflection.
/// Throws PreconditionError for non-finite z and NumericalError when the
/// reflection term overflows.
Complex faddeeva(Complex z);

/// Complex error function, via faddeeva (Taylor series near the origin).
Complex erf(Complex z);

/// Imaginary error function, -i erf(iz).
Complex erfi(Complex z);

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  int order() const { return static_cast<int>(nodes.size()); }
};

/// Gauss-Hermite rule for int exp(-x^2) f(x) dx, 1 <= order <= 128.
/// Nodes ascending.
QuadratureRule gauss_hermite(int order);

/// Gauss-Legendre rule on [-1, 1], 1 <= order <= 128.
QuadratureRule gauss_legendre(int order);

using Objective = std::function<double(std::span<const double>)>;

struct SimplexOptions {
  double tol = 1e-9;          // stop when simplex diameter (max-norm) drops below
  int max_iter = 5000;
  double initial_step = 0.1;  // edge length of the starting simplex
};

struct SimplexResult {
  std::vector<double> point;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Nelder-Mead minimization with coefficients (1, 2, 0.5, 0.5).
/// Hitting max_iter is reported through `converged`, not an exception.
SimplexResult minimize_simplex(const Objective& f, std::span<const double> start,
                               const SimplexOptions& options = {});

/// Root of f on [lo, hi] to within tol. Requires f(lo) * f(hi) <= 0.
double bisect(const std::function<double(double)>& f, double lo, double hi, double tol);

}  // namespace numerics
}  // namespace bellsim
