// Truncated Fock-basis simulation of the ECS Bell pipeline. Shares no code
// with the dyad algebra beyond the numerics module; used only to cross-check it.

#include <cmath>
#include <numbers>
#include <vector>

#include <fmt/format.h>

#include "bellsim/catstates.hpp"
#include "bellsim/errors.hpp"

namespace bellsim::catstates {
namespace {

constexpr double kTailLimit = 1e-12;
constexpr int kMaxCutoff = 80;

// Poisson(|alpha|^2) mass above n_max.
double coherent_tail(double mean, int n_max) {
  double log_term = -mean + (n_max + 1) * std::log(mean) - std::lgamma(n_max + 2.0);
  double tail = 0.0;
  for (int k = n_max + 1; k < n_max + 2000; ++k) {
    const double term = std::exp(log_term);
    tail += term;
    if (term < 1e-30 && k > mean) break;
    log_term += std::log(mean) - std::log(k + 1.0);
  }
  return tail;
}

std::vector<Complex> coherent_vector(Complex amp, int n_max) {
  std::vector<Complex> c(static_cast<std::size_t>(n_max + 1));
  c[0] = std::exp(-0.5 * std::norm(amp));
  for (int m = 1; m <= n_max; ++m) c[m] = c[m - 1] * amp / std::sqrt(static_cast<double>(m));
  return c;
}

std::vector<Complex> normalized(std::vector<Complex> v) {
  double norm = 0.0;
  for (const Complex& x : v) norm += std::norm(x);
  norm = std::sqrt(norm);
  for (Complex& x : v) x /= norm;
  return v;
}

// Two-mode operator on |m_a, m_b>, row index m_a * d + m_b.
class TwoModeMatrix {
 public:
  explicit TwoModeMatrix(int n_max)
      : d_(static_cast<std::size_t>(n_max + 1)), dim_(d_ * d_), data_(dim_ * dim_) {}

  std::size_t cutoff_dim() const { return d_; }
  std::size_t dim() const { return dim_; }
  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  Complex operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

 private:
  std::size_t d_;
  std::size_t dim_;
  std::vector<Complex> data_;
};

double binomial(int m, int k) {
  double c = 1.0;
  for (int j = 1; j <= k; ++j) c = c * (m - k + j) / j;
  return c;
}

TwoModeMatrix fock_loss(const TwoModeMatrix& rho, Side mode, double eta) {
  if (eta == 1.0) return rho;
  const std::size_t d = rho.cutoff_dim();
  const std::size_t stride = mode == Side::a ? d : 1;
  auto occupation = [&](std::size_t i) {
    return static_cast<int>(mode == Side::a ? i / d : i % d);
  };
  const int n = static_cast<int>(d) - 1;
  // Kraus amplitudes A_k |m> = sqrt(C(m,k) eta^(m-k) (1-eta)^k) |m-k>.
  std::vector<double> amp(d * d, 0.0);
  for (int m = 0; m <= n; ++m) {
    for (int k = 0; k <= m; ++k) {
      amp[static_cast<std::size_t>(m) * d + k] =
          std::sqrt(binomial(m, k) * std::pow(eta, m - k) * std::pow(1.0 - eta, k));
    }
  }

  TwoModeMatrix out(n);
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    const int m = occupation(i);
    for (std::size_t j = 0; j < rho.dim(); ++j) {
      const Complex v = rho(i, j);
      if (v == Complex{}) continue;
      const int mp = occupation(j);
      for (int k = 0; k <= std::min(m, mp); ++k) {
        const double coeff = amp[static_cast<std::size_t>(m) * d + k] *
                             amp[static_cast<std::size_t>(mp) * d + k];
        out(i - k * stride, j - k * stride) += coeff * v;
      }
    }
  }
  return out;
}

// U = 1 + (e^{i theta} - 1)|even><even| + (e^{-i theta} - 1)|odd><odd| on one mode,
// with even/odd cats of amplitude +-basis built in the truncated basis.
void fock_rotation(TwoModeMatrix& rho, Side mode, double theta, Complex basis) {
  const std::size_t d = rho.cutoff_dim();
  const int n = static_cast<int>(d) - 1;
  const std::vector<Complex> plus = coherent_vector(basis, n);
  const std::vector<Complex> minus = coherent_vector(-basis, n);
  std::vector<Complex> even(d), odd(d);
  for (std::size_t m = 0; m < d; ++m) {
    even[m] = plus[m] + minus[m];
    odd[m] = plus[m] - minus[m];
  }
  std::vector<std::vector<Complex>> vectors;
  std::vector<Complex> lambdas;
  const Complex i(0.0, 1.0);
  vectors.push_back(normalized(even));
  lambdas.push_back(std::exp(i * theta) - 1.0);
  if (std::abs(basis) > 0.0) {
    vectors.push_back(normalized(odd));
    lambdas.push_back(std::exp(-i * theta) - 1.0);
  }

  auto join = [&](std::size_t local, std::size_t other) {
    return mode == Side::a ? local * d + other : other * d + local;
  };

  const std::size_t dim = rho.dim();
  // Left multiplication: rho <- U rho.
  for (std::size_t col = 0; col < dim; ++col) {
    for (std::size_t other = 0; other < d; ++other) {
      std::vector<Complex> proj(vectors.size(), 0.0);
      for (std::size_t r = 0; r < vectors.size(); ++r) {
        for (std::size_t m = 0; m < d; ++m) proj[r] += std::conj(vectors[r][m]) * rho(join(m, other), col);
      }
      for (std::size_t m = 0; m < d; ++m) {
        Complex delta = 0.0;
        for (std::size_t r = 0; r < vectors.size(); ++r) delta += lambdas[r] * vectors[r][m] * proj[r];
        rho(join(m, other), col) += delta;
      }
    }
  }
  // Right multiplication: rho <- rho U^dagger.
  for (std::size_t row = 0; row < dim; ++row) {
    for (std::size_t other = 0; other < d; ++other) {
      std::vector<Complex> proj(vectors.size(), 0.0);
      for (std::size_t r = 0; r < vectors.size(); ++r) {
        for (std::size_t m = 0; m < d; ++m) proj[r] += rho(row, join(m, other)) * vectors[r][m];
      }
      for (std::size_t m = 0; m < d; ++m) {
        Complex delta = 0.0;
        for (std::size_t r = 0; r < vectors.size(); ++r) {
          delta += std::conj(lambdas[r]) * proj[r] * std::conj(vectors[r][m]);
        }
        rho(row, join(m, other)) += delta;
      }
    }
  }
}

// Half-line overlaps of the x = a + a^dagger eigenfunctions,
// I[m][m'] = int psi_m(x) psi_m'(x) dx over x >= 0 (plus) or x < 0 (minus).
struct HalfLineOverlaps {
  std::vector<double> plus;
  std::vector<double> minus;
};

HalfLineOverlaps halfline_overlaps(int n_max) {
  const auto d = static_cast<std::size_t>(n_max + 1);
  const double q_extent = std::sqrt(2.0 * n_max + 1.0) + 10.0;
  const double x_extent = std::numbers::sqrt2 * q_extent;
  constexpr double kPanel = 0.25;
  const int panels = static_cast<int>(std::ceil(x_extent / kPanel));
  const numerics::QuadratureRule gl = numerics::gauss_legendre(20);

  HalfLineOverlaps out{std::vector<double>(d * d, 0.0), std::vector<double>(d * d, 0.0)};
  std::vector<double> psi(d);
  const double pim4 = std::pow(std::numbers::pi, -0.25);
  for (int half = 0; half < 2; ++half) {
    std::vector<double>& target = half == 0 ? out.plus : out.minus;
    const double orientation = half == 0 ? 1.0 : -1.0;
    for (int p = 0; p < panels; ++p) {
      const double lo = p * kPanel;
      for (int g = 0; g < gl.order(); ++g) {
        const double x = orientation * (lo + 0.5 * kPanel * (gl.nodes[g] + 1.0));
        const double w = 0.5 * kPanel * gl.weights[g];
        // psi_m(x) = 2^{-1/4} phi_m(x / sqrt 2), phi the oscillator eigenfunctions.
        const double q = x / std::numbers::sqrt2;
        psi[0] = std::pow(2.0, -0.25) * pim4 * std::exp(-0.5 * q * q);
        if (d > 1) psi[1] = std::numbers::sqrt2 * q * psi[0];
        for (std::size_t m = 2; m < d; ++m) {
          psi[m] = std::sqrt(2.0 / m) * q * psi[m - 1] - std::sqrt((m - 1.0) / m) * psi[m - 2];
        }
        for (std::size_t m = 0; m < d; ++m) {
          for (std::size_t mp = 0; mp < d; ++mp) target[m * d + mp] += w * psi[m] * psi[mp];
        }
      }
    }
  }
  return out;
}

}  // namespace

int fock_cutoff(double alpha) {
  // Sign probabilities are bilinear in amplitudes, so the truncation error is
  // of order sqrt(tail); ask for a squared-size tail.
  for (int n = 1; n <= kMaxCutoff; ++n) {
    if (coherent_tail(alpha * alpha, n) < kTailLimit * kTailLimit) return n;
  }
  throw PreconditionError(fmt::format("fock_cutoff: alpha = {} needs more than {} photons", alpha, kMaxCutoff));
}

double fock_oracle_ecs(double alpha, double theta_a, double theta_b, const LossPlacement& loss,
                       int n_max) {
  loss.validate();
  if (!(alpha > 0.0 && alpha <= 4.0)) {
    throw PreconditionError(fmt::format("fock_oracle_ecs: alpha must lie in (0, 4], got {}", alpha));
  }
  if (n_max < 1 || n_max > kMaxCutoff) {
    throw PreconditionError(fmt::format("fock_oracle_ecs: n_max must lie in [1, {}]", kMaxCutoff));
  }
  const double tail = coherent_tail(alpha * alpha, n_max);
  if (tail >= kTailLimit) {
    throw PreconditionError(fmt::format(
        "fock_oracle_ecs: coherent tail {} above n_max = {} exceeds {}", tail, n_max, kTailLimit));
  }

  const auto d = static_cast<std::size_t>(n_max + 1);
  const std::vector<Complex> plus = coherent_vector(alpha, n_max);
  const std::vector<Complex> minus = coherent_vector(-alpha, n_max);
  const double norm = 1.0 / std::sqrt(2.0 * (1.0 + std::exp(-4.0 * alpha * alpha)));
  std::vector<Complex> ket(d * d);
  for (std::size_t ma = 0; ma < d; ++ma) {
    for (std::size_t mb = 0; mb < d; ++mb) {
      ket[ma * d + mb] = norm * (plus[ma] * plus[mb] + minus[ma] * minus[mb]);
    }
  }
  TwoModeMatrix rho(n_max);
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    for (std::size_t j = 0; j < rho.dim(); ++j) rho(i, j) = ket[i] * std::conj(ket[j]);
  }

  rho = fock_loss(fock_loss(rho, Side::a, loss.eta_before), Side::b, loss.eta_before);
  const Complex basis = std::sqrt(loss.eta_before) * alpha;
  fock_rotation(rho, Side::a, theta_a, basis);
  fock_rotation(rho, Side::b, theta_b, basis);
  rho = fock_loss(fock_loss(rho, Side::a, loss.eta_after), Side::b, loss.eta_after);

  const HalfLineOverlaps overlaps = halfline_overlaps(n_max);
  Complex same = 0.0;
  Complex total = 0.0;
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    const std::size_t ia = i / d, ib = i % d;
    for (std::size_t j = 0; j < rho.dim(); ++j) {
      const Complex v = rho(i, j);
      if (v == Complex{}) continue;
      const std::size_t ja = j / d, jb = j % d;
      const double ap = overlaps.plus[ia * d + ja], am = overlaps.minus[ia * d + ja];
      const double bp = overlaps.plus[ib * d + jb], bm = overlaps.minus[ib * d + jb];
      same += v * ((ap - am) * (bp - bm));
      total += v * ((ap + am) * (bp + bm));
    }
  }
  return same.real() / total.real();
}

}  // namespace bellsim::catstates
