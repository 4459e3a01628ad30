#include <cmath>

#include <fmt/format.h>

#include "bellsim/errors.hpp"
#include "bellsim/numerics.hpp"

namespace bellsim::numerics {

double bisect(const std::function<double(double)>& f, double lo, double hi, double tol) {
  if (!(tol > 0.0)) throw PreconditionError("bisect: tol must be positive");
  if (!(lo < hi)) throw PreconditionError("bisect: require lo < hi");

  double f_lo = f(lo);
  const double f_hi = f(hi);
  if (!std::isfinite(f_lo) || !std::isfinite(f_hi) || f_lo * f_hi > 0.0) {
    throw PreconditionError(
        fmt::format("bisect: invalid bracket, f({}) = {}, f({}) = {}", lo, f_lo, hi, f_hi));
  }
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;

  while (0.5 * (hi - lo) > tol) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = f(mid);
    if (!std::isfinite(f_mid)) {
      throw NumericalError(fmt::format("bisect: f({}) is not finite", mid));
    }
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace bellsim::numerics
