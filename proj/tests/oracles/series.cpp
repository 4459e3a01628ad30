#include "oracles/series.hpp"

#include <cmath>
#include <numbers>

namespace oracles {

std::complex<double> erf_series(std::complex<double> z) {
  using C = std::complex<long double>;
  const C zz(z.real(), z.imag());
  const C z2 = zz * zz;
  C term = zz;  // z^(2k+1) (-1)^k / k!
  C sum = zz;
  for (int k = 1; k < 400; ++k) {
    term *= -z2 / static_cast<long double>(k);
    const C add = term / static_cast<long double>(2 * k + 1);
    sum += add;
    if (std::abs(add) < 1e-22L * std::abs(sum)) break;
  }
  const C out = sum * (2.0L / std::sqrt(std::numbers::pi_v<long double>));
  return {static_cast<double>(out.real()), static_cast<double>(out.imag())};
}

double scaled_erfc(double y) {
  return std::exp(y * y) * (1.0 - erf_series({y, 0.0}).real());
}

double gaussian_moment(int two_k) {
  double m = std::sqrt(std::numbers::pi);
  for (int j = 1; j < two_k; j += 2) m *= j / 2.0;
  return m;
}

double polarization_threshold(int n) {
  return 1.0 - std::pow(3.0 - 2.0 * std::numbers::sqrt2, 1.0 / n);
}

}  // namespace oracles
