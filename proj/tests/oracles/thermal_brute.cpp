#include "oracles/thermal_brute.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "bellsim/catstates.hpp"

namespace oracles {
namespace {

using bellsim::Complex;
namespace cs = bellsim::catstates;

// Both half-line integrals of one mode of sigma|amp><tau amp| after
// loss(eta1), rotation and loss(eta2).
std::array<Complex, 2> mode_outcomes(Complex amp, double sigma, double tau, double eta1, double eta2,
                                     double theta) {
  const cs::ModeDyad pre = cs::mode_loss({1.0, sigma * amp, tau * amp}, eta1);
  const Complex basis = std::sqrt(eta1) * amp;
  std::array<Complex, 2> out{};
  for (const cs::ModeDyad& piece : cs::mode_rotation(pre, theta, basis)) {
    const cs::ModeDyad post = cs::mode_loss(piece, eta2);
    out[0] += post.coeff * cs::homodyne_halfline(post.ket, post.bra, cs::Outcome::plus);
    out[1] += post.coeff * cs::homodyne_halfline(post.ket, post.bra, cs::Outcome::minus);
  }
  return out;
}

}  // namespace

BruteEts ets_brute_force(double V, double d, double eta1, double eta2, double theta_a, double theta_b,
                         int points) {
  const auto gl = bellsim::numerics::gauss_legendre(points);
  const double sd = std::sqrt((V - 1.0) / 4.0);
  const double half = 6.0 * sd;
  auto density = [&](double re, double im) {
    const double r2 = (re - d) * (re - d) + im * im;
    return 2.0 / (std::numbers::pi * (V - 1.0)) * std::exp(-2.0 * r2 / (V - 1.0));
  };

  std::vector<Complex> nodes;
  std::vector<double> weights;
  for (int i = 0; i < points; ++i) {
    for (int j = 0; j < points; ++j) {
      nodes.emplace_back(d + half * gl.nodes[i], half * gl.nodes[j]);
      weights.push_back(half * half * gl.weights[i] * gl.weights[j] *
                        density(d + half * gl.nodes[i], half * gl.nodes[j]));
    }
  }

  std::array<std::array<Complex, 2>, 2> p{};
  Complex trace = 0.0;
  for (std::size_t ia = 0; ia < nodes.size(); ++ia) {
    for (std::size_t ib = 0; ib < nodes.size(); ++ib) {
      const double w = weights[ia] * weights[ib];
      const Complex a = nodes[ia];
      const Complex b = nodes[ib];
      for (double sigma : {1.0, -1.0}) {
        for (double tau : {1.0, -1.0}) {
          trace += w * cs::coherent_overlap(tau * a, sigma * a) * cs::coherent_overlap(tau * b, sigma * b);
          const auto ea = mode_outcomes(a, sigma, tau, eta1, eta2, theta_a);
          const auto eb = mode_outcomes(b, sigma, tau, eta1, eta2, theta_b);
          for (int k = 0; k < 2; ++k) {
            for (int l = 0; l < 2; ++l) p[k][l] += w * ea[k] * eb[l];
          }
        }
      }
    }
  }
  const double e = (p[0][0] + p[1][1] - p[0][1] - p[1][0]).real() / trace.real();
  return {e, trace.real()};
}

}  // namespace oracles
