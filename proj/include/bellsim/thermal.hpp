#pragma once

#include <array>

#include "bellsim/catstates.hpp"
#include "bellsim/fockspace.hpp"
#include "bellsim/numerics.hpp"

namespace bellsim::thermal {

// Displaced thermal P-distribution, variance V, centred at d on the real axis.
struct ThermalParams {
  double V = 1.0;
  double d = 1.0;

  // V = 2(nbar - d^2) + 1
  static ThermalParams from_mean_photons(double nbar, double d);
  double mean_photons() const { return 0.5 * (V - 1.0) + d * d; }
  void validate() const;
};

/// [2(1 + e^{-4 d^2 / V} / V^2)]^{-1}
double n_plus(const ThermalParams& params);

/// Helper functions of the closed-form ETS correlation. Exponential helpers
/// are returned as their (complex) logarithms so callers can combine them
/// before exponentiating.
struct EtsHelpers {
  ThermalParams params;
  double eta = 1.0;

  double s(double theta) const;  // sign, s(0) = +1
  double log_h(double theta) const;
  double g(double theta) const;  // Erfi of a real argument
  double log_V1() const;
  Complex log_V2(double theta_a, double theta_b) const;
  Complex log_Q(double theta_a, double theta_b) const;
  Complex f(int sign, double theta) const;  // sign = +1 or -1
};

struct ClosedFormValue {
  double value = 0.0;
  double imag_residue = 0.0;
};

/// Closed-form correlation. Throws NumericalError naming the
/// helper when an evaluation is not finite.
ClosedFormValue cets_closed_form(double theta_a, double theta_b, const ThermalParams& params,
                                 double eta);

/// Gauss-Hermite evaluation of the ETS pipeline at a fixed quadrature order.
///
/// Each P-representation sample is pushed through the ECS dyad pipeline
/// (loss, amplitude-matched cat rotation, loss, half-line homodyne). The state
/// is a sum over (sigma, tau) of products of single-mode dyads, so the 4-D
/// integral factorizes into per-mode 2-D integrals, precomputed here as the
/// coefficients of cos^2, cos sin and sin^2 of the rotation angle.
class EtsQuadrature {
 public:
  EtsQuadrature(const ThermalParams& params, const LossPlacement& loss, int order);

  int order() const { return order_; }
  // Normalized to unit trace numerically.
  catstates::SignProbabilities probabilities(double theta_a, double theta_b) const;
  double correlation(double theta_a, double theta_b) const;
  // |N_+ Z - 1| with Z the trace of the unnormalized integral.
  double normalization_defect() const { return normalization_defect_; }

 private:
  // table_[sigma][tau][outcome][power]: power 0, 1, 2 multiplies c^2, cs, s^2.
  using Table = std::array<std::array<std::array<std::array<Complex, 3>, 2>, 2>, 2>;

  std::array<Complex, 2> mode_factor(int sigma, int tau, double theta) const;

  int order_;
  Table table_{};
  double trace_ = 0.0;
  double normalization_defect_ = 0.0;
};

/// Converged quadrature estimate: orders `order` and `order + 8` must agree
/// within 1e-4, otherwise NumericalError. Returns the higher-order value.
double cets_quadrature(double theta_a, double theta_b, const ThermalParams& params,
                       const LossPlacement& loss, int order = 32);

/// Overload with detection loss only (eta_after = eta).
double cets_quadrature(double theta_a, double theta_b, const ThermalParams& params, double eta,
                       int order = 32);

/// exp(-gamma t), used as pre-unitary transmittivity.
double gamma_to_eta(double gamma_t);

}  // namespace bellsim::thermal
