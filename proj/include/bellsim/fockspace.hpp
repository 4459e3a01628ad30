#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bellsim/numerics.hpp"

namespace bellsim {

enum class Side { a, b };

// Beam-splitter transmittivities around the local unitary:
// B(eta_after) U(theta) B(eta_before).
struct LossPlacement {
  double eta_before = 1.0;
  double eta_after = 1.0;

  void validate() const;
};

namespace fockspace {

inline constexpr int kMaxPhotons = 8;

// Density operator over |aH, aV> (x) |bH, bV>, each occupation in [0, n].
// Dense row-major storage of dimension (n+1)^4.
class PolarizationState {
 public:
  // Zero operator with photon bound n.
  explicit PolarizationState(int n);

  int photons() const { return n_; }
  std::size_t dimension() const { return dim_; }

  std::size_t index(int a_h, int a_v, int b_h, int b_v) const;
  // Occupation of mode 0..3 (aH, aV, bH, bV) in basis vector `i`.
  int occupation(std::size_t i, int mode) const;

  Complex operator()(std::size_t row, std::size_t col) const { return rho_[row * dim_ + col]; }
  Complex& operator()(std::size_t row, std::size_t col) { return rho_[row * dim_ + col]; }

  std::span<const Complex> data() const { return rho_; }

  Complex trace() const;
  double purity() const;
  // max |rho - rho^dagger|
  double hermiticity_defect() const;

 private:
  int n_;
  std::size_t d_;
  std::size_t dim_;
  std::vector<Complex> rho_;
};

/// (|n_H,0>_a |0,n_V>_b + |0,n_V>_a |n_H,0>_b)/sqrt(2) as a density operator.
PolarizationState make_psi_n(int n);

/// Pure-loss channel with transmittivity eta on both the H and V modes of a side.
PolarizationState apply_loss(const PolarizationState& state, Side side, double eta);

/// Single-mode loss on mode 0..3 (aH, aV, bH, bV).
PolarizationState apply_mode_loss(const PolarizationState& state, int mode, double eta);

/// exp[i theta (|n_H><n_V| + h.c.)] on one side; identity off span{(n,0),(0,n)}.
PolarizationState apply_rotation_p(const PolarizationState& state, Side side, double theta);

/// Tr[(O (x) O) rho] for the on/off polarization observable with the
/// no-click outcome counted as +1.
double expect_OO(const PolarizationState& state);

/// Probability that a side registers at least one photon.
double click_probability(const PolarizationState& state, Side side);

/// Full simulation: psi_n, loss(eta_before), rotations, loss(eta_after), <O O>.
double correlation_p(int n, double theta_a, double theta_b, const LossPlacement& loss);

/// (1-eta)^(2n) - [1-(1-eta)^n]^2 cos[2(theta_a + theta_b)]; post-unitary loss only.
double analytic_Ep(int n, double theta_a, double theta_b, double eta);

/// 1 - (1-eta)^n.
double success_probability(int n, double eta);

}  // namespace fockspace
}  // namespace bellsim
