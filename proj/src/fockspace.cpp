#include "bellsim/fockspace.hpp"

#include <cmath>
#include <string>

#include <fmt/format.h>

#include "bellsim/errors.hpp"

namespace bellsim {

void LossPlacement::validate() const {
  auto check = [](double eta, const char* name) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
      throw PreconditionError(fmt::format("{} must lie in [0, 1], got {}", name, eta));
    }
  };
  check(eta_before, "eta_before");
  check(eta_after, "eta_after");
}

namespace fockspace {
namespace {

void check_eta(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw PreconditionError(fmt::format("loss: eta must lie in [0, 1], got {}", eta));
  }
}

double binomial(int m, int k) {
  double c = 1.0;
  for (int j = 1; j <= k; ++j) c = c * (m - k + j) / j;
  return c;
}

// coeff[m][m'][k] = sqrt(C(m,k) C(m',k)) eta^((m+m')/2 - k) (1-eta)^k
std::vector<double> loss_table(int n, double eta) {
  const int d = n + 1;
  std::vector<double> table(static_cast<std::size_t>(d * d * d), 0.0);
  for (int m = 0; m < d; ++m) {
    for (int mp = 0; mp < d; ++mp) {
      for (int k = 0; k <= std::min(m, mp); ++k) {
        const double amp = std::sqrt(binomial(m, k) * binomial(mp, k));
        table[static_cast<std::size_t>((m * d + mp) * d + k)] =
            amp * std::pow(eta, 0.5 * (m + mp) - k) * std::pow(1.0 - eta, k);
      }
    }
  }
  return table;
}

// Ô eigenvalue of a single side occupied by (h, v) photons.
double side_observable(int h, int v) {
  if (h == 0 && v == 0) return 1.0;
  if (v == 0) return 1.0;
  if (h == 0) return -1.0;
  return 0.0;
}

}  // namespace

PolarizationState::PolarizationState(int n) : n_(n) {
  if (n < 1 || n > kMaxPhotons) {
    throw PreconditionError(
        fmt::format("photon number must lie in [1, {}], got {}", kMaxPhotons, n));
  }
  d_ = static_cast<std::size_t>(n + 1);
  dim_ = d_ * d_ * d_ * d_;
  rho_.assign(dim_ * dim_, Complex{});
}

std::size_t PolarizationState::index(int a_h, int a_v, int b_h, int b_v) const {
  return ((static_cast<std::size_t>(a_h) * d_ + a_v) * d_ + b_h) * d_ + b_v;
}

int PolarizationState::occupation(std::size_t i, int mode) const {
  for (int p = 3; p > mode; --p) i /= d_;
  return static_cast<int>(i % d_);
}

Complex PolarizationState::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double PolarizationState::purity() const {
  // Tr rho^2 = sum |rho_ij|^2 for Hermitian rho.
  double p = 0.0;
  for (const Complex& v : rho_) p += std::norm(v);
  return p;
}

double PolarizationState::hermiticity_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i; j < dim_; ++j) {
      worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    }
  }
  return worst;
}

PolarizationState make_psi_n(int n) {
  PolarizationState state(n);
  const std::size_t first = state.index(n, 0, 0, n);
  const std::size_t second = state.index(0, n, n, 0);
  for (std::size_t r : {first, second}) {
    for (std::size_t c : {first, second}) state(r, c) = 0.5;
  }
  return state;
}

PolarizationState apply_mode_loss(const PolarizationState& state, int mode, double eta) {
  check_eta(eta);
  if (mode < 0 || mode > 3) throw PreconditionError("apply_mode_loss: mode must lie in [0, 3]");
  if (eta == 1.0) return state;

  const int n = state.photons();
  const auto d = static_cast<std::size_t>(n + 1);
  const std::vector<double> table = loss_table(n, eta);
  std::size_t stride = 1;
  for (int p = 3; p > mode; --p) stride *= d;

  PolarizationState out(n);
  const std::size_t dim = state.dimension();
  for (std::size_t i = 0; i < dim; ++i) {
    const int m = state.occupation(i, mode);
    for (std::size_t j = 0; j < dim; ++j) {
      const Complex v = state(i, j);
      if (v == Complex{}) continue;
      const int mp = state.occupation(j, mode);
      const std::size_t base = (static_cast<std::size_t>(m) * d + mp) * d;
      for (int k = 0; k <= std::min(m, mp); ++k) {
        const std::size_t shift = static_cast<std::size_t>(k) * stride;
        out(i - shift, j - shift) += table[base + k] * v;
      }
    }
  }
  return out;
}

PolarizationState apply_loss(const PolarizationState& state, Side side, double eta) {
  check_eta(eta);
  const int first = side == Side::a ? 0 : 2;
  return apply_mode_loss(apply_mode_loss(state, first, eta), first + 1, eta);
}

PolarizationState apply_rotation_p(const PolarizationState& state, Side side, double theta) {
  if (!std::isfinite(theta)) throw PreconditionError("apply_rotation_p: theta must be finite");
  const int n = state.photons();
  const auto d = static_cast<std::size_t>(n + 1);
  const std::size_t side_dim = d * d;
  const double c = std::cos(theta);
  const Complex is(0.0, std::sin(theta));

  // Basis pairs (|n_H,0>, |0,n_V>) on the rotated side for every state of the other side.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(side_dim);
  for (std::size_t rest = 0; rest < side_dim; ++rest) {
    const auto rh = static_cast<int>(rest / d);
    const auto rv = static_cast<int>(rest % d);
    if (side == Side::a) {
      pairs.emplace_back(state.index(n, 0, rh, rv), state.index(0, n, rh, rv));
    } else {
      pairs.emplace_back(state.index(rh, rv, n, 0), state.index(rh, rv, 0, n));
    }
  }

  PolarizationState out = state;
  const std::size_t dim = state.dimension();
  // U rho
  for (const auto& [i0, i1] : pairs) {
    for (std::size_t j = 0; j < dim; ++j) {
      const Complex r0 = out(i0, j);
      const Complex r1 = out(i1, j);
      out(i0, j) = c * r0 + is * r1;
      out(i1, j) = is * r0 + c * r1;
    }
  }
  // (U rho) U^dagger
  for (std::size_t i = 0; i < dim; ++i) {
    for (const auto& [j0, j1] : pairs) {
      const Complex c0 = out(i, j0);
      const Complex c1 = out(i, j1);
      out(i, j0) = c * c0 - is * c1;
      out(i, j1) = -is * c0 + c * c1;
    }
  }
  return out;
}

double expect_OO(const PolarizationState& state) {
  double e = 0.0;
  for (std::size_t i = 0; i < state.dimension(); ++i) {
    const double weight = state(i, i).real();
    if (weight == 0.0) continue;
    e += weight * side_observable(state.occupation(i, 0), state.occupation(i, 1)) *
         side_observable(state.occupation(i, 2), state.occupation(i, 3));
  }
  return e;
}

double click_probability(const PolarizationState& state, Side side) {
  const int first = side == Side::a ? 0 : 2;
  double p = 0.0;
  for (std::size_t i = 0; i < state.dimension(); ++i) {
    if (state.occupation(i, first) + state.occupation(i, first + 1) > 0) p += state(i, i).real();
  }
  return p;
}

double correlation_p(int n, double theta_a, double theta_b, const LossPlacement& loss) {
  loss.validate();
  PolarizationState state = make_psi_n(n);
  state = apply_loss(apply_loss(state, Side::a, loss.eta_before), Side::b, loss.eta_before);
  state = apply_rotation_p(apply_rotation_p(state, Side::a, theta_a), Side::b, theta_b);
  state = apply_loss(apply_loss(state, Side::a, loss.eta_after), Side::b, loss.eta_after);
  return expect_OO(state);
}

double analytic_Ep(int n, double theta_a, double theta_b, double eta) {
  check_eta(eta);
  const double u = std::pow(1.0 - eta, n);
  return u * u - (1.0 - u) * (1.0 - u) * std::cos(2.0 * (theta_a + theta_b));
}

double success_probability(int n, double eta) {
  check_eta(eta);
  return 1.0 - std::pow(1.0 - eta, n);
}

}  // namespace fockspace
}  // namespace bellsim
