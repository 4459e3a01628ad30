#include "bellsim/thermal.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "bellsim/errors.hpp"

namespace bellsim::thermal {
namespace {

constexpr double kConvergenceTol = 1e-4;
constexpr double kImagResidueTol = 1e-9;
constexpr int kMinOrder = 8;
constexpr int kMaxOrder = 48;

// log(1 + e^a) without overflow.
double log1p_exp(double a) { return a > 0.0 ? a + std::log1p(std::exp(-a)) : std::log1p(std::exp(a)); }

Complex checked(Complex v, const char* helper) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw NumericalError(fmt::format("cets_closed_form: helper {} is not finite", helper));
  }
  return v;
}

double sign_of(int index) { return index == 0 ? 1.0 : -1.0; }

}  // namespace

ThermalParams ThermalParams::from_mean_photons(double nbar, double d) {
  ThermalParams p{2.0 * (nbar - d * d) + 1.0, d};
  p.validate();
  return p;
}

void ThermalParams::validate() const {
  if (!(V >= 1.0) || !std::isfinite(V)) {
    throw PreconditionError(fmt::format("thermal: V must be finite and >= 1, got {}", V));
  }
  if (!(d > 0.0) || !std::isfinite(d)) {
    throw PreconditionError(fmt::format("thermal: d must be finite and > 0, got {}", d));
  }
}

double n_plus(const ThermalParams& params) {
  params.validate();
  return 1.0 / (2.0 * (1.0 + std::exp(-4.0 * params.d * params.d / params.V) /
                                 (params.V * params.V)));
}

double EtsHelpers::s(double theta) const { return theta >= 0.0 ? 1.0 : -1.0; }

double EtsHelpers::log_h(double theta) const {
  const double d = params.d;
  return 2.0 * (d * d * d * d + theta * theta) / (d * d * params.V);
}

double EtsHelpers::g(double theta) const {
  const double V = params.V;
  const double arg = std::numbers::sqrt2 * eta * theta /
                     (params.d * std::sqrt(V * V - eta * eta * V * (V - 1.0)));
  return numerics::erfi(Complex(arg, 0.0)).real();
}

double EtsHelpers::log_V1() const {
  const double V = params.V;
  const double d = params.d;
  return -std::log(8.0) - log1p_exp(2.0 * std::log(V) + 4.0 * d * d / V);
}

Complex EtsHelpers::log_V2(double theta_a, double theta_b) const {
  const double V = params.V;
  const double d = params.d;
  return Complex(-2.0 * (1.0 + V * V) * (theta_a * theta_a + theta_b * theta_b) / (d * d * V),
                 -4.0 * (theta_a + theta_b));
}

Complex EtsHelpers::log_Q(double theta_a, double theta_b) const {
  const double V = params.V;
  const double d = params.d;
  return Complex(std::log(8.0) + 2.0 * V * (theta_a * theta_a + theta_b * theta_b) / (d * d),
                 4.0 * theta_b);
}

Complex EtsHelpers::f(int sign, double theta) const {
  const double V = params.V;
  const double d = params.d;
  const Complex num = std::numbers::sqrt2 * eta * Complex(d * d, sign * V * theta);
  return numerics::erf(num / (d * std::sqrt(1.0 + eta * eta * (V - 1.0))));
}

ClosedFormValue cets_closed_form(double theta_a, double theta_b, const ThermalParams& params,
                                 double eta) {
  params.validate();
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw PreconditionError(fmt::format("cets_closed_form: eta must lie in (0, 1], got {}", eta));
  }
  if (!std::isfinite(theta_a) || !std::isfinite(theta_b)) {
    throw PreconditionError("cets_closed_form: angles must be finite");
  }
  const EtsHelpers hp{params, eta};
  const double V = params.V;
  const double d = params.d;
  const Complex i(0.0, 1.0);

  const double lv1 = hp.log_V1();
  const Complex lv2 = hp.log_V2(theta_a, theta_b);
  const Complex lq = hp.log_Q(theta_a, theta_b);
  const double lha = hp.log_h(theta_a);
  const double lhb = hp.log_h(theta_b);
  const double ga = hp.g(theta_a);
  const double gb = hp.g(theta_b);
  const double sb = hp.s(theta_b);
  const Complex fma = checked(hp.f(-1, theta_a), "f_-(theta_a)");
  const Complex fpa = checked(hp.f(+1, theta_a), "f_+(theta_a)");
  const Complex fmb = checked(hp.f(-1, theta_b), "f_-(theta_b)");
  const Complex fpb = checked(hp.f(+1, theta_b), "f_+(theta_b)");
  checked(ga, "g(theta_a)");
  checked(gb, "g(theta_b)");

  const Complex e4a = std::exp(4.0 * i * theta_a);
  const Complex e8a = std::exp(8.0 * i * theta_a);
  const Complex e8b = std::exp(8.0 * i * theta_b);
  const Complex base = lv1 + lv2;

  const Complex t1 = checked(std::exp(base + lq), "Q") * e4a * ga * gb * sb;
  const Complex t2 = checked(std::exp(base + 2.0 * d * d / V + lv1 + lhb), "h(theta_b)") * e4a *
                     ga * i * (fmb - e8b * fpb);
  const Complex lt3 = base + lv1 + lha + 2.0 * theta_b * (2.0 * i + V * theta_b / (d * d));
  const Complex t3 = checked(std::exp(lt3), "h(theta_a)") * i * gb * sb * (fma - e8b * fpa);
  const Complex t4 = checked(std::exp(base + 2.0 * lv1 + lha + lhb), "V1") * 4.0 *
                     (e8a * fmb * fpa + e8a * fma * fpb);

  const Complex total = checked(t1 + t2 + t3 + t4, "C");
  return {total.real(), total.imag()};
}

EtsQuadrature::EtsQuadrature(const ThermalParams& params, const LossPlacement& loss, int order)
    : order_(order) {
  params.validate();
  loss.validate();
  if (order < kMinOrder || order > kMaxOrder + 8) {
    throw PreconditionError(
        fmt::format("ets quadrature: order must lie in [{}, {}], got {}", kMinOrder, kMaxOrder, order));
  }
  const numerics::QuadratureRule rule = numerics::gauss_hermite(order);
  // Per-component variance of P^th is (V - 1)/4.
  const double spread = std::numbers::sqrt2 * std::sqrt((params.V - 1.0) / 4.0);
  const double eta1 = loss.eta_before;
  const double eta2 = loss.eta_after;
  const Complex i(0.0, 1.0);

  std::array<std::array<Complex, 2>, 2> trace_table{};
  for (int ix = 0; ix < order; ++ix) {
    for (int iy = 0; iy < order; ++iy) {
      const double w = rule.weights[ix] * rule.weights[iy] / std::numbers::pi;
      const Complex alpha(params.d + spread * rule.nodes[ix], spread * rule.nodes[iy]);
      const Complex basis = std::sqrt(eta1) * alpha;

      // Post-rotation dyad |s A><t A| through loss and homodyne.
      auto detected = [&](double s, double t, catstates::Outcome k) {
        const catstates::ModeDyad out = catstates::mode_loss({1.0, s * basis, t * basis}, eta2);
        return out.coeff * catstates::homodyne_halfline(out.ket, out.bra, k);
      };

      for (int si = 0; si < 2; ++si) {
        for (int ti = 0; ti < 2; ++ti) {
          const double sigma = sign_of(si);
          const double tau = sign_of(ti);
          trace_table[si][ti] += w * catstates::coherent_overlap(tau * alpha, sigma * alpha);
          const Complex pre = w * catstates::mode_loss({1.0, sigma * alpha, tau * alpha}, eta1).coeff;
          for (int k = 0; k < 2; ++k) {
            const auto outcome = k == 0 ? catstates::Outcome::plus : catstates::Outcome::minus;
            auto& cell = table_[si][ti][k];
            cell[0] += pre * detected(sigma, tau, outcome);
            cell[1] += pre * (-i * detected(sigma, -tau, outcome) + i * detected(-sigma, tau, outcome));
            cell[2] += pre * detected(-sigma, -tau, outcome);
          }
        }
      }
    }
  }

  Complex z = 0.0;
  for (int si = 0; si < 2; ++si) {
    for (int ti = 0; ti < 2; ++ti) z += trace_table[si][ti] * trace_table[si][ti];
  }
  trace_ = z.real();
  normalization_defect_ = std::abs(n_plus(params) * trace_ - 1.0);
}

std::array<Complex, 2> EtsQuadrature::mode_factor(int sigma, int tau, double theta) const {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  std::array<Complex, 2> out{};
  for (int k = 0; k < 2; ++k) {
    const auto& cell = table_[sigma][tau][k];
    out[k] = c * c * cell[0] + c * s * cell[1] + s * s * cell[2];
  }
  return out;
}

catstates::SignProbabilities EtsQuadrature::probabilities(double theta_a, double theta_b) const {
  std::array<std::array<Complex, 2>, 2> p{};
  for (int si = 0; si < 2; ++si) {
    for (int ti = 0; ti < 2; ++ti) {
      const auto a = mode_factor(si, ti, theta_a);
      const auto b = mode_factor(si, ti, theta_b);
      for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) p[k][l] += a[k] * b[l];
      }
    }
  }
  auto take = [&](Complex v, const char* name) {
    if (std::abs(v.imag()) > kImagResidueTol * std::abs(trace_)) {
      throw NumericalError(
          fmt::format("ets quadrature: P_{} has imaginary residue {}", name, v.imag() / trace_));
    }
    return v.real() / trace_;
  };
  catstates::SignProbabilities out;
  out.pp = take(p[0][0], "++");
  out.pm = take(p[0][1], "+-");
  out.mp = take(p[1][0], "-+");
  out.mm = take(p[1][1], "--");
  return out;
}

double EtsQuadrature::correlation(double theta_a, double theta_b) const {
  return probabilities(theta_a, theta_b).correlation();
}

double cets_quadrature(double theta_a, double theta_b, const ThermalParams& params,
                       const LossPlacement& loss, int order) {
  if (order < kMinOrder || order > kMaxOrder) {
    throw PreconditionError(
        fmt::format("cets_quadrature: order must lie in [{}, {}], got {}", kMinOrder, kMaxOrder, order));
  }
  const double low = EtsQuadrature(params, loss, order).correlation(theta_a, theta_b);
  const double high = EtsQuadrature(params, loss, order + 8).correlation(theta_a, theta_b);
  if (std::abs(high - low) >= kConvergenceTol) {
    throw NumericalError(fmt::format(
        "cets_quadrature: orders {} and {} disagree ({} vs {})", order, order + 8, low, high));
  }
  return high;
}

double cets_quadrature(double theta_a, double theta_b, const ThermalParams& params, double eta,
                       int order) {
  return cets_quadrature(theta_a, theta_b, params, LossPlacement{1.0, eta}, order);
}

double gamma_to_eta(double gamma_t) {
  if (!(gamma_t >= 0.0) || !std::isfinite(gamma_t)) {
    throw PreconditionError(fmt::format("gamma_to_eta: gamma t must be finite and >= 0, got {}", gamma_t));
  }
  return std::exp(-gamma_t);
}

}  // namespace bellsim::thermal
