#include "bellsim/bell.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <tuple>

#include <fmt/format.h>

#include "bellsim/catstates.hpp"
#include "bellsim/numerics.hpp"
#include "bellsim/thermal.hpp"

namespace bellsim::bell {
namespace {

constexpr double kTsirelson = 2.0 * std::numbers::sqrt2;
constexpr double kTsirelsonSlack = 1e-6;
constexpr double kSurfaceCheckTol = 1e-8;
constexpr double kEtsConvergenceTol = 1e-4;
constexpr double kThresholdMargin = 1e-9;
constexpr double kMonotoneSlack = 1e-7;
constexpr int kPrescanPoints = 11;

using Basis = std::array<double, TrigSurface::kBasis>;

Basis basis(double t) { return {1.0, std::cos(t), std::sin(t), std::cos(2.0 * t), std::sin(2.0 * t)}; }

Basis mat_vec(const TrigSurface::Matrix& m, const Basis& v) {
  Basis out{};
  for (int i = 0; i < TrigSurface::kBasis; ++i) {
    for (int j = 0; j < TrigSurface::kBasis; ++j) out[i] += m[i][j] * v[j];
  }
  return out;
}

double dot(const Basis& x, const Basis& y) {
  double s = 0.0;
  for (int i = 0; i < TrigSurface::kBasis; ++i) s += x[i] * y[i];
  return s;
}

double wrap(double t) { return t - std::numbers::pi * std::floor((t + 0.5 * std::numbers::pi) / std::numbers::pi); }

bool surface_capable(const Scenario& scenario, Engine engine) {
  return !(std::holds_alternative<Ets>(scenario.family) && engine == Engine::closed_form);
}

// Multi-start search where `signed_b(angles)` is the CHSH combination.
BellResult optimize(const std::function<double(const AngleSet&)>& signed_b,
                    const OptimizeOptions& options) {
  if (options.starts_per_axis < 1) throw PreconditionError("optimize_chsh: starts_per_axis must be >= 1");
  const int k = options.starts_per_axis;
  const double cell = std::numbers::pi / k;
  numerics::SimplexOptions simplex;
  simplex.tol = options.tol;
  simplex.max_iter = options.max_iter;
  simplex.initial_step = std::numbers::pi / 8.0;

  auto to_angles = [](std::span<const double> x) { return AngleSet{x[0], x[1], x[2], x[3]}; };

  BellResult best;
  best.b_max = -1.0;
  int restarts = 0;
  std::array<double, 4> start{};
  for (int i0 = 0; i0 < k; ++i0) {
    for (int i1 = 0; i1 < k; ++i1) {
      for (int i2 = 0; i2 < k; ++i2) {
        for (int i3 = 0; i3 < k; ++i3) {
          const std::array<int, 4> idx{i0, i1, i2, i3};
          for (int c = 0; c < 4; ++c) {
            start[c] = -0.5 * std::numbers::pi + (idx[c] + 0.5) * cell + options.grid_offset;
          }
          for (double sign : {1.0, -1.0}) {
            const numerics::Objective objective = [&](std::span<const double> x) {
              return -sign * signed_b(to_angles(x));
            };
            const numerics::SimplexResult r = numerics::minimize_simplex(objective, start, simplex);
            ++restarts;
            const double b = -r.value * sign;
            if (std::abs(b) > best.b_max) {
              best.b_max = std::abs(b);
              best.angles = to_angles(r.point);
              best.converged = r.converged;
            }
          }
        }
      }
    }
  }
  best.n_restarts = restarts;
  best.angles = canonicalize(best.angles);
  if (!std::isfinite(best.b_max)) throw NumericalError("optimize_chsh: non-finite Bell value");
  if (best.b_max > kTsirelson + kTsirelsonSlack) {
    throw NumericalError(fmt::format(
        "optimize_chsh: b_max = {:.12f} exceeds the Tsirelson bound at angles ({}, {}, {}, {})",
        best.b_max, best.angles.theta_a, best.angles.theta_b, best.angles.theta_a_prime,
        best.angles.theta_b_prime));
  }
  return best;
}

// Largest order checked: the top pair is (48, 56).
constexpr int kEtsTopOrder = 56;

Correlation ets_oracle(const Ets& ets, const Scenario& scenario) {
  const thermal::ThermalParams params{ets.V, ets.d};
  auto low = std::make_shared<thermal::EtsQuadrature>(params, scenario.loss, scenario.ets_order);
  // Wide thermal spreads against narrow overlap factors need more nodes; step
  // the pair (k, k + 8) up until it agrees.
  for (;;) {
    auto high = std::make_shared<thermal::EtsQuadrature>(params, scenario.loss, low->order() + 8);
    // Both orders are exact trig surfaces, so agreement on a 5 x 5 angle grid
    // bounds the disagreement everywhere up to the fitting constants.
    double worst = 0.0, at_a = 0.0, at_b = 0.0, va = 0.0, vb = 0.0;
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) {
        const double ta = 2.0 * std::numbers::pi * i / 5.0;
        const double tb = 2.0 * std::numbers::pi * j / 5.0;
        const double a = low->correlation(ta, tb);
        const double b = high->correlation(ta, tb);
        if (std::abs(a - b) > worst) std::tie(worst, at_a, at_b, va, vb) = std::tuple{std::abs(a - b), ta, tb, a, b};
      }
    }
    if (worst < kEtsConvergenceTol) return [high](double ta, double tb) { return high->correlation(ta, tb); };
    if (high->order() >= kEtsTopOrder) {
      throw NumericalError(fmt::format(
          "ets quadrature not converged at (V={}, d={}, eta1={}, eta2={}): orders {} and {} give "
          "{} vs {} at ({}, {})",
          ets.V, ets.d, scenario.loss.eta_before, scenario.loss.eta_after, low->order(), high->order(), va, vb,
          at_a, at_b));
    }
    low = high;
  }
}

}  // namespace

AngleSet canonicalize(const AngleSet& a) {
  return {wrap(a.theta_a), wrap(a.theta_b), wrap(a.theta_a_prime), wrap(a.theta_b_prime)};
}

double chsh(const Correlation& e, const AngleSet& a) {
  return e(a.theta_a, a.theta_b) + e(a.theta_a, a.theta_b_prime) + e(a.theta_a_prime, a.theta_b) -
         e(a.theta_a_prime, a.theta_b_prime);
}

TrigSurface TrigSurface::fit(const Correlation& correlation) {
  constexpr int n = kBasis;
  std::array<double, n> theta{};
  for (int k = 0; k < n; ++k) theta[k] = 2.0 * std::numbers::pi * k / n;
  // Discrete Fourier weights: exact inverse of the sampling for this basis.
  const std::array<double, n> c{1.0 / n, 2.0 / n, 2.0 / n, 2.0 / n, 2.0 / n};
  std::array<Basis, n> phi{};
  for (int k = 0; k < n; ++k) phi[k] = basis(theta[k]);

  Matrix f{};
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) f[k][l] = correlation(theta[k], theta[l]);
  }
  TrigSurface s;
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) acc += phi[k][p] * f[k][l] * phi[l][q];
      }
      s.m_[p][q] = c[p] * c[q] * acc;
    }
  }
  return s;
}

double TrigSurface::operator()(double theta_a, double theta_b) const {
  return dot(basis(theta_a), mat_vec(m_, basis(theta_b)));
}

double TrigSurface::chsh(const AngleSet& a) const {
  const Basis u = mat_vec(m_, basis(a.theta_b));
  const Basis v = mat_vec(m_, basis(a.theta_b_prime));
  Basis sum{}, diff{};
  for (int i = 0; i < kBasis; ++i) {
    sum[i] = u[i] + v[i];
    diff[i] = u[i] - v[i];
  }
  return dot(basis(a.theta_a), sum) + dot(basis(a.theta_a_prime), diff);
}

std::string engine_name(const Family& family, Engine resolved) {
  const bool closed = resolved == Engine::closed_form;
  if (std::holds_alternative<Polarization>(family)) return closed ? "closed_form_p" : "fock_simulation";
  if (std::holds_alternative<Ecs>(family)) return closed ? "dyad_algebra" : "fock_oracle";
  return closed ? "closed_form_ets" : "gauss_hermite";
}

Engine resolve_engine(const Scenario& scenario) {
  if (scenario.engine != Engine::automatic) return scenario.engine;
  if (std::holds_alternative<Polarization>(scenario.family)) {
    return scenario.loss.eta_before == 1.0 ? Engine::closed_form : Engine::oracle;
  }
  if (std::holds_alternative<Ecs>(scenario.family)) return Engine::closed_form;
  return Engine::oracle;
}

Correlation make_correlation(const Scenario& scenario) {
  scenario.loss.validate();
  const Engine engine = resolve_engine(scenario);
  const LossPlacement loss = scenario.loss;

  if (const auto* p = std::get_if<Polarization>(&scenario.family)) {
    const int n = p->n;
    if (engine == Engine::closed_form) {
      if (loss.eta_before != 1.0) {
        throw PreconditionError("closed-form polarization correlation requires eta_before = 1");
      }
      fockspace::analytic_Ep(n, 0.0, 0.0, loss.eta_after);  // validates eta
      return [n, loss](double ta, double tb) { return fockspace::analytic_Ep(n, ta, tb, loss.eta_after); };
    }
    using fockspace::apply_loss;
    auto state = std::make_shared<fockspace::PolarizationState>(fockspace::make_psi_n(n));
    *state = apply_loss(apply_loss(*state, Side::a, loss.eta_before), Side::b, loss.eta_before);
    return [state, loss](double ta, double tb) {
      fockspace::PolarizationState s = fockspace::apply_rotation_p(*state, Side::a, ta);
      s = fockspace::apply_rotation_p(s, Side::b, tb);
      s = apply_loss(apply_loss(s, Side::a, loss.eta_after), Side::b, loss.eta_after);
      return fockspace::expect_OO(s);
    };
  }

  if (const auto* e = std::get_if<Ecs>(&scenario.family)) {
    const double alpha = e->alpha;
    catstates::make_ecs(alpha);  // validates alpha
    if (engine == Engine::closed_form) {
      return [alpha, loss](double ta, double tb) { return catstates::correlation_ecs(alpha, ta, tb, loss); };
    }
    const int cutoff = catstates::fock_cutoff(alpha);
    return [alpha, loss, cutoff](double ta, double tb) {
      return catstates::fock_oracle_ecs(alpha, ta, tb, loss, cutoff);
    };
  }

  const Ets& ets = std::get<Ets>(scenario.family);
  if (engine == Engine::closed_form) {
    if (loss.eta_before != 1.0) {
      throw PreconditionError("closed-form ETS correlation takes detection loss only (eta_before = 1)");
    }
    const thermal::ThermalParams params{ets.V, ets.d};
    return [params, loss](double ta, double tb) {
      return thermal::cets_closed_form(ta, tb, params, loss.eta_after).value;
    };
  }
  return ets_oracle(ets, scenario);
}

BellResult optimize_chsh(const Correlation& correlation, const OptimizeOptions& options) {
  BellResult r = optimize([&](const AngleSet& a) { return chsh(correlation, a); }, options);
  r.engine_used = "direct";
  return r;
}

BellResult optimize_chsh(const Scenario& scenario, const OptimizeOptions& options) {
  const Engine engine = resolve_engine(scenario);
  const Correlation correlation = make_correlation(scenario);
  BellResult result;
  if (surface_capable(scenario, engine)) {
    const TrigSurface surface = TrigSurface::fit(correlation);
    // Off-grid probe guards against an engine that is not a degree-2 surface.
    constexpr double probe_a = 0.3717, probe_b = -1.2931;
    const double direct = correlation(probe_a, probe_b);
    const double fitted = surface(probe_a, probe_b);
    if (std::abs(direct - fitted) > kSurfaceCheckTol) {
      throw NumericalError(fmt::format(
          "optimize_chsh: trig surface mismatch {} vs {} at ({}, {})", fitted, direct, probe_a, probe_b));
    }
    result = optimize([&](const AngleSet& a) { return surface.chsh(a); }, options);
    // Report the value of the engine itself at the optimum.
    result.b_max = std::abs(chsh(correlation, result.angles));
  } else {
    result = optimize([&](const AngleSet& a) { return chsh(correlation, a); }, options);
  }
  result.engine_used = engine_name(scenario.family, engine);
  return result;
}

double closed_form_bmax_p(int n, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw PreconditionError(fmt::format("closed_form_bmax_p: eta must lie in [0, 1], got {}", eta));
  }
  if (n < 1) throw PreconditionError("closed_form_bmax_p: n must be positive");
  const double u = std::pow(1.0 - eta, n);
  return 2.0 * u * u + kTsirelson * (1.0 - u) * (1.0 - u);
}

double closed_form_threshold_p(int n) {
  if (n < 1) throw PreconditionError("closed_form_threshold_p: n must be positive");
  return 1.0 - std::pow(3.0 - kTsirelson, 1.0 / n);
}

ThresholdResult threshold_eta2(const Scenario& scenario, double tol, const OptimizeOptions& options) {
  if (!(tol > 0.0)) throw PreconditionError("threshold_eta2: tol must be positive");
  auto b_max_at = [&](double eta2) {
    Scenario s = scenario;
    s.loss.eta_after = eta2;
    return optimize_chsh(s, options).b_max;
  };

  ThresholdResult result;
  for (int k = 0; k < kPrescanPoints; ++k) {
    const double eta = static_cast<double>(k) / (kPrescanPoints - 1);
    result.prescan.emplace_back(eta, b_max_at(eta));
  }
  const auto& scan = result.prescan;
  auto g = [](double b) { return b - 2.0 - kThresholdMargin; };

  if (g(scan.back().second) <= 0.0) {
    result.status = ThresholdStatus::no_threshold;
    result.eta_star = std::numeric_limits<double>::quiet_NaN();
    return result;
  }
  int last_low = -1;
  for (int k = 0; k < kPrescanPoints; ++k) {
    if (g(scan[k].second) <= 0.0) last_low = k;
  }
  for (int k = 0; k < last_low; ++k) {
    if (g(scan[k].second) > 0.0) {
      throw MonotonicityError(
          fmt::format("threshold_eta2: b_max - 2 changes sign more than once (violation at eta2 = {} "
                      "but not at eta2 = {})",
                      scan[k].first, scan[last_low].first),
          scan);
    }
  }
  if (last_low < 0) {
    throw MonotonicityError("threshold_eta2: b_max exceeds 2 already at eta2 = 0", scan);
  }
  for (int k = last_low; k + 1 < kPrescanPoints; ++k) {
    if (scan[k + 1].second < scan[k].second - kMonotoneSlack) {
      throw MonotonicityError(fmt::format("threshold_eta2: b_max decreases between eta2 = {} and {}",
                                          scan[k].first, scan[k + 1].first),
                              scan);
    }
  }
  result.eta_star = numerics::bisect([&](double eta) { return g(b_max_at(eta)); }, scan[last_low].first,
                                     scan[last_low + 1].first, tol);
  result.status = ThresholdStatus::found;
  return result;
}

}  // namespace bellsim::bell
