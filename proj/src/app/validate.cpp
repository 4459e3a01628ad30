#include "bellsim/app/validate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>

#include <fmt/format.h>

#include "bellsim/catstates.hpp"
#include "bellsim/fockspace.hpp"
#include "bellsim/thermal.hpp"

namespace bellsim::app {
namespace {

constexpr double kFockTol = 1e-10;
constexpr double kEcsTol = 1e-6;
constexpr double kEtsClosedTol = 1e-3;
constexpr double kEtsConvergenceTol = 1e-4;
constexpr double kEtsNormalizationTol = 1e-3;

constexpr std::array<double, 5> kAngles{-1.1, -0.45, 0.0, 0.3, 0.95};
constexpr std::array<double, 5> kEtas{0.1, 0.3, 0.5, 0.7, 0.9};

CheckResult fock_vs_closed_form(const ValidateOptions& options) {
  CheckResult r{"fockspace_vs_closed_form", CheckStatus::pass, 0.0, kFockTol, ""};
  for (int n = 1; n <= 4; ++n) {
    for (double ta : kAngles) {
      for (double tb : kAngles) {
        for (double eta : kEtas) {
          const double sim = fockspace::correlation_p(n, ta, tb, {1.0, eta});
          const double ref = options.analytic_ep ? options.analytic_ep(n, ta, tb, eta)
                                                 : fockspace::analytic_Ep(n, ta, tb, eta);
          const double dev = std::abs(sim - ref);
          if (dev > r.max_deviation) {
            r.max_deviation = dev;
            r.detail = fmt::format("worst at n={} theta_a={} theta_b={} eta={}", n, ta, tb, eta);
          }
        }
      }
    }
  }
  if (!(r.max_deviation < r.tolerance)) r.status = CheckStatus::fail;
  return r;
}

CheckResult dyad_vs_fock(const ValidateOptions& options) {
  CheckResult r{"dyad_vs_fock_oracle", CheckStatus::pass, 0.0, kEcsTol, ""};
  const std::array<LossPlacement, 3> losses{{{1.0, 1.0}, {1.0, 0.7}, {0.8, 0.6}}};
  const std::array<double, 3> angles{-0.7, 0.15, 0.6};
  for (double alpha : {0.5, 1.0}) {
    const int cutoff = catstates::fock_cutoff(alpha);
    for (const LossPlacement& loss : losses) {
      for (double ta : angles) {
        for (double tb : angles) {
          const double dyad = options.correlation_ecs
                                  ? options.correlation_ecs(alpha, ta, tb, loss.eta_before, loss.eta_after)
                                  : catstates::correlation_ecs(alpha, ta, tb, loss);
          const double fock = catstates::fock_oracle_ecs(alpha, ta, tb, loss, cutoff);
          const double dev = std::abs(dyad - fock);
          if (dev > r.max_deviation) {
            r.max_deviation = dev;
            r.detail = fmt::format("worst at alpha={} eta1={} eta2={} theta_a={} theta_b={}", alpha,
                                   loss.eta_before, loss.eta_after, ta, tb);
          }
        }
      }
    }
  }
  if (!(r.max_deviation < r.tolerance)) r.status = CheckStatus::fail;
  return r;
}

struct EtsProbe {
  double V, d, eta, theta_a, theta_b;
};
constexpr std::array<EtsProbe, 4> kEtsProbes{{{10.0, 5.0, 0.9, 0.1, 0.05},
                                              {10.0, 5.0, 1.0, 0.3, -0.2},
                                              {1.001, 5.0, 1.0, 0.2, 0.1},
                                              {10.0, 2.0, 0.8, -0.4, 0.25}}};

CheckResult ets_convergence() {
  CheckResult r{"ets_quadrature_convergence", CheckStatus::pass, 0.0, kEtsConvergenceTol, ""};
  for (const EtsProbe& p : kEtsProbes) {
    const thermal::ThermalParams params{p.V, p.d};
    const LossPlacement loss{1.0, p.eta};
    const double low = thermal::EtsQuadrature(params, loss, 32).correlation(p.theta_a, p.theta_b);
    const double high = thermal::EtsQuadrature(params, loss, 40).correlation(p.theta_a, p.theta_b);
    r.max_deviation = std::max(r.max_deviation, std::abs(high - low));
  }
  r.detail = "orders 32 vs 40";
  if (!(r.max_deviation < r.tolerance)) r.status = CheckStatus::fail;
  return r;
}

CheckResult ets_normalization() {
  CheckResult r{"ets_normalization", CheckStatus::pass, 0.0, kEtsNormalizationTol, ""};
  for (const EtsProbe& p : kEtsProbes) {
    const thermal::EtsQuadrature q({p.V, p.d}, {1.0, p.eta}, 40);
    if (q.normalization_defect() > r.max_deviation) {
      r.max_deviation = q.normalization_defect();
      r.detail = fmt::format("|N_+ Z - 1| worst at V={} d={}", p.V, p.d);
    }
  }
  if (!(r.max_deviation < r.tolerance)) r.status = CheckStatus::warn;
  return r;
}

CheckResult ets_closed_vs_quadrature() {
  CheckResult r{"ets_closed_form_vs_quadrature", CheckStatus::pass, 0.0, kEtsClosedTol, ""};
  std::string points;
  for (const EtsProbe& p : kEtsProbes) {
    const thermal::ThermalParams params{p.V, p.d};
    const thermal::ClosedFormValue closed = thermal::cets_closed_form(p.theta_a, p.theta_b, params, p.eta);
    const double quad = thermal::cets_quadrature(p.theta_a, p.theta_b, params, p.eta);
    const double dev = std::abs(closed.value - quad);
    r.max_deviation = std::max(r.max_deviation, dev);
    points += fmt::format("{}(V={} d={} eta={} theta=({}, {}): closed {:.6g} [imag {:.2g}] vs quadrature {:.6g})",
                          points.empty() ? "" : "; ", p.V, p.d, p.eta, p.theta_a, p.theta_b, closed.value,
                          closed.imag_residue, quad);
  }
  r.detail = points;
  // The quadrature is authoritative; a mismatch is reported, not fatal.
  if (!(r.max_deviation < r.tolerance)) r.status = CheckStatus::warn;
  return r;
}

CheckResult guarded(const std::string& name, const std::function<CheckResult()>& check) {
  try {
    return check();
  } catch (const std::exception& e) {
    return {name, CheckStatus::fail, 0.0, 0.0, fmt::format("threw: {}", e.what())};
  }
}

}  // namespace

std::vector<CheckResult> run_validate(const ValidateOptions& options) {
  return {
      guarded("fockspace_vs_closed_form", [&] { return fock_vs_closed_form(options); }),
      guarded("dyad_vs_fock_oracle", [&] { return dyad_vs_fock(options); }),
      guarded("ets_quadrature_convergence", ets_convergence),
      guarded("ets_normalization", ets_normalization),
      guarded("ets_closed_form_vs_quadrature", ets_closed_vs_quadrature),
  };
}

int report_validate(std::ostream& out, const std::vector<CheckResult>& results) {
  int code = 0;
  for (const CheckResult& r : results) {
    const char* tag = r.status == CheckStatus::pass ? "PASS" : r.status == CheckStatus::warn ? "WARN" : "FAIL";
    out << fmt::format("{} {} max_dev={:.3e} tol={:.0e}", tag, r.name, r.max_deviation, r.tolerance);
    if (!r.detail.empty()) out << " | " << r.detail;
    out << '\n';
    if (r.status == CheckStatus::fail) code = 3;
  }
  return code;
}

}  // namespace bellsim::app
