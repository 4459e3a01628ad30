#pragma once

#include <array>
#include <vector>

#include "bellsim/fockspace.hpp"
#include "bellsim/numerics.hpp"

namespace bellsim::catstates {

// coeff |ket_a><bra_a| (x) |ket_b><bra_b| with coherent-state kets and bras.
struct DyadTerm {
  Complex coeff;
  Complex ket_a;
  Complex bra_a;
  Complex ket_b;
  Complex bra_b;
};

// Finite sum of two-mode coherent-state dyads. Closed under pure loss and
// under rotations on a cat-qubit span, so ECS and ETS samples stay exact.
struct GaussianDyadState {
  std::vector<DyadTerm> terms;

  Complex trace() const;
  // Every term has its conjugate-transpose partner with conjugate coefficient.
  bool hermitian_paired(double tol = 1e-12) const;
  // Merge terms whose four amplitudes coincide within tol.
  void compress(double tol = 1e-12);
};

// One mode of a dyad: coeff |ket><bra|.
struct ModeDyad {
  Complex coeff;
  Complex ket;
  Complex bra;
};

enum class Outcome { plus, minus };

struct SignProbabilities {
  double pp = 0.0;
  double pm = 0.0;
  double mp = 0.0;
  double mm = 0.0;

  double total() const { return pp + pm + mp + mm; }
  double correlation() const { return pp + mm - pm - mp; }
};

/// <bra|ket> for coherent states.
Complex coherent_overlap(Complex bra, Complex ket);

/// |ket><bra| -> exp[-(1-eta)(|ket|^2+|bra|^2-2 conj(bra) ket)/2] |sqrt(eta) ket><sqrt(eta) bra|.
ModeDyad mode_loss(const ModeDyad& dyad, double eta);

/// U |s A> = cos(theta)|s A> + i sin(theta)|-s A> on span{|A>, |-A>}, applied as U(.)U^dagger.
/// Kets and bras must equal +-basis_amp within 1e-9.
std::array<ModeDyad, 4> mode_rotation(const ModeDyad& dyad, double theta, Complex basis_amp);

/// int over the half line selected by `sign` of <x|ket><bra|x>, x = a + a^dagger.
/// The two half lines sum to <bra|ket>.
Complex homodyne_halfline(Complex ket, Complex bra, Outcome sign);

/// N (|alpha,alpha> + |-alpha,-alpha>), as four dyads.
GaussianDyadState make_ecs(double alpha);

GaussianDyadState dyad_loss(const GaussianDyadState& state, Side mode, double eta);

GaussianDyadState cat_rotation(const GaussianDyadState& state, Side mode, double theta,
                               Complex basis_amp);

/// Dichotomized homodyne probabilities; P_pm means + on a, - on b.
SignProbabilities joint_sign_probs(const GaussianDyadState& state);

/// make_ecs -> loss(eta_before) -> rotations on sqrt(eta_before) alpha -> loss(eta_after).
double correlation_ecs(double alpha, double theta_a, double theta_b, const LossPlacement& loss);

/// Same pipeline as correlation_ecs in a truncated two-mode Fock basis with
/// numerically integrated quadrature distributions.
double fock_oracle_ecs(double alpha, double theta_a, double theta_b, const LossPlacement& loss,
                       int n_max);

/// Smallest cutoff whose coherent tail at amplitude alpha is below 1e-24.
int fock_cutoff(double alpha);

}  // namespace bellsim::catstates
