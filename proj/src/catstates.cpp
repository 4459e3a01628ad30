#include "bellsim/catstates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "bellsim/errors.hpp"

namespace bellsim::catstates {
namespace {

constexpr double kBasisTol = 1e-9;
constexpr double kImagResidueTol = 1e-10;
constexpr double kNormalizationTol = 1e-6;

void check_eta(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw PreconditionError(fmt::format("loss: eta must lie in [0, 1], got {}", eta));
  }
}

// +1 or -1 such that amp == sign * basis_amp.
double basis_sign(Complex amp, Complex basis_amp) {
  if (std::abs(amp - basis_amp) <= kBasisTol) return 1.0;
  if (std::abs(amp + basis_amp) <= kBasisTol) return -1.0;
  throw PreconditionError(
      fmt::format("cat_rotation: amplitude ({}, {}) is not +-basis_amp ({}, {})", amp.real(),
                  amp.imag(), basis_amp.real(), basis_amp.imag()));
}

bool close(Complex x, Complex y, double tol) { return std::abs(x - y) <= tol; }

}  // namespace

Complex GaussianDyadState::trace() const {
  Complex t = 0.0;
  for (const DyadTerm& term : terms) {
    t += term.coeff * coherent_overlap(term.bra_a, term.ket_a) *
         coherent_overlap(term.bra_b, term.ket_b);
  }
  return t;
}

bool GaussianDyadState::hermitian_paired(double tol) const {
  for (const DyadTerm& term : terms) {
    bool found = false;
    for (const DyadTerm& other : terms) {
      if (close(other.ket_a, term.bra_a, tol) && close(other.bra_a, term.ket_a, tol) &&
          close(other.ket_b, term.bra_b, tol) && close(other.bra_b, term.ket_b, tol) &&
          close(other.coeff, std::conj(term.coeff), tol * std::max(1.0, std::abs(term.coeff)))) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

void GaussianDyadState::compress(double tol) {
  std::vector<DyadTerm> merged;
  merged.reserve(terms.size());
  for (const DyadTerm& term : terms) {
    bool absorbed = false;
    for (DyadTerm& m : merged) {
      if (close(m.ket_a, term.ket_a, tol) && close(m.bra_a, term.bra_a, tol) &&
          close(m.ket_b, term.ket_b, tol) && close(m.bra_b, term.bra_b, tol)) {
        m.coeff += term.coeff;
        absorbed = true;
        break;
      }
    }
    if (!absorbed) merged.push_back(term);
  }
  std::erase_if(merged, [](const DyadTerm& t) { return t.coeff == Complex{}; });
  terms = std::move(merged);
}

Complex coherent_overlap(Complex bra, Complex ket) {
  return std::exp(std::conj(bra) * ket - 0.5 * (std::norm(ket) + std::norm(bra)));
}

ModeDyad mode_loss(const ModeDyad& dyad, double eta) {
  check_eta(eta);
  const Complex exponent = -(1.0 - eta) *
                           (std::norm(dyad.ket) + std::norm(dyad.bra) -
                            2.0 * std::conj(dyad.bra) * dyad.ket) /
                           2.0;
  const double root = std::sqrt(eta);
  return ModeDyad{dyad.coeff * std::exp(exponent), root * dyad.ket, root * dyad.bra};
}

std::array<ModeDyad, 4> mode_rotation(const ModeDyad& dyad, double theta, Complex basis_amp) {
  if (!std::isfinite(theta)) throw PreconditionError("cat_rotation: theta must be finite");
  const Complex ket = basis_sign(dyad.ket, basis_amp) * basis_amp;
  const Complex bra = basis_sign(dyad.bra, basis_amp) * basis_amp;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const Complex i(0.0, 1.0);
  // (c|k> + is|-k>)(c<b| - is<-b|)
  return {ModeDyad{dyad.coeff * c * c, ket, bra},
          ModeDyad{dyad.coeff * (-i * c * s), ket, -bra},
          ModeDyad{dyad.coeff * (i * c * s), -ket, bra},
          ModeDyad{dyad.coeff * (s * s), -ket, -bra}};
}

Complex homodyne_halfline(Complex ket, Complex bra, Outcome sign) {
  // <x|k><b|x> = <b|k> N(x; mu, 1) with mu = k + conj(b), so the half-line
  // integral is <b|k> erfc(-+mu/sqrt 2)/2. The Gaussian factors are merged
  // into E = <b|k> exp(-mu^2/2), whose modulus is exp(-(Re k)^2 - (Re b)^2).
  const Complex bra_c = std::conj(bra);
  const Complex mu = ket + bra_c;
  const Complex u = (sign == Outcome::plus ? -1.0 : 1.0) * mu / std::numbers::sqrt2;
  const Complex scaled =
      std::exp(-0.5 * (ket * ket + bra_c * bra_c + std::norm(ket) + std::norm(bra)));
  const Complex i(0.0, 1.0);
  if (u.real() >= 0.0) return 0.5 * scaled * numerics::faddeeva(i * u);
  return coherent_overlap(bra, ket) - 0.5 * scaled * numerics::faddeeva(-i * u);
}

GaussianDyadState make_ecs(double alpha) {
  if (!(alpha > 0.0 && alpha <= 4.0)) {
    throw PreconditionError(fmt::format("make_ecs: alpha must lie in (0, 4], got {}", alpha));
  }
  const double norm_sq = 1.0 / (2.0 * (1.0 + std::exp(-4.0 * alpha * alpha)));
  GaussianDyadState state;
  for (double s : {1.0, -1.0}) {
    for (double t : {1.0, -1.0}) {
      state.terms.push_back(
          DyadTerm{norm_sq, s * alpha, t * alpha, s * alpha, t * alpha});
    }
  }
  return state;
}

GaussianDyadState dyad_loss(const GaussianDyadState& state, Side mode, double eta) {
  check_eta(eta);
  GaussianDyadState out = state;
  for (DyadTerm& term : out.terms) {
    Complex& ket = mode == Side::a ? term.ket_a : term.ket_b;
    Complex& bra = mode == Side::a ? term.bra_a : term.bra_b;
    const ModeDyad lossy = mode_loss(ModeDyad{term.coeff, ket, bra}, eta);
    term.coeff = lossy.coeff;
    ket = lossy.ket;
    bra = lossy.bra;
  }
  return out;
}

GaussianDyadState cat_rotation(const GaussianDyadState& state, Side mode, double theta,
                               Complex basis_amp) {
  GaussianDyadState out;
  out.terms.reserve(4 * state.terms.size());
  for (const DyadTerm& term : state.terms) {
    const bool on_a = mode == Side::a;
    const ModeDyad local{term.coeff, on_a ? term.ket_a : term.ket_b,
                         on_a ? term.bra_a : term.bra_b};
    for (const ModeDyad& piece : mode_rotation(local, theta, basis_amp)) {
      DyadTerm next = term;
      next.coeff = piece.coeff;
      (on_a ? next.ket_a : next.ket_b) = piece.ket;
      (on_a ? next.bra_a : next.bra_b) = piece.bra;
      out.terms.push_back(next);
    }
  }
  out.compress();
  return out;
}

SignProbabilities joint_sign_probs(const GaussianDyadState& state) {
  Complex pp = 0.0, pm = 0.0, mp = 0.0, mm = 0.0;
  for (const DyadTerm& t : state.terms) {
    const Complex a_plus = homodyne_halfline(t.ket_a, t.bra_a, Outcome::plus);
    const Complex a_minus = homodyne_halfline(t.ket_a, t.bra_a, Outcome::minus);
    const Complex b_plus = homodyne_halfline(t.ket_b, t.bra_b, Outcome::plus);
    const Complex b_minus = homodyne_halfline(t.ket_b, t.bra_b, Outcome::minus);
    pp += t.coeff * a_plus * b_plus;
    pm += t.coeff * a_plus * b_minus;
    mp += t.coeff * a_minus * b_plus;
    mm += t.coeff * a_minus * b_minus;
  }

  SignProbabilities probs;
  auto take_real = [](Complex p, const char* name) {
    if (std::abs(p.imag()) > kImagResidueTol) {
      throw NumericalError(
          fmt::format("joint_sign_probs: P_{} has imaginary residue {}", name, p.imag()));
    }
    return p.real();
  };
  probs.pp = take_real(pp, "++");
  probs.pm = take_real(pm, "+-");
  probs.mp = take_real(mp, "-+");
  probs.mm = take_real(mm, "--");

  const double total = probs.total();
  if (std::abs(total - 1.0) > kNormalizationTol) {
    throw NumericalError(fmt::format("joint_sign_probs: probabilities sum to {}", total));
  }
  for (double* p : {&probs.pp, &probs.pm, &probs.mp, &probs.mm}) *p = std::clamp(*p, 0.0, 1.0);
  return probs;
}

double correlation_ecs(double alpha, double theta_a, double theta_b, const LossPlacement& loss) {
  loss.validate();
  GaussianDyadState state = make_ecs(alpha);
  state = dyad_loss(dyad_loss(state, Side::a, loss.eta_before), Side::b, loss.eta_before);
  const Complex basis = std::sqrt(loss.eta_before) * alpha;
  state = cat_rotation(state, Side::a, theta_a, basis);
  state = cat_rotation(state, Side::b, theta_b, basis);
  state = dyad_loss(dyad_loss(state, Side::a, loss.eta_after), Side::b, loss.eta_after);
  return joint_sign_probs(state).correlation();
}

}  // namespace bellsim::catstates
