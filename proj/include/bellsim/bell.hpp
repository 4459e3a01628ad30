#pragma once

#include <array>
#include <functional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bellsim/errors.hpp"
#include "bellsim/fockspace.hpp"

namespace bellsim::bell {

struct AngleSet {
  double theta_a = 0.0;
  double theta_b = 0.0;
  double theta_a_prime = 0.0;
  double theta_b_prime = 0.0;
};

/// Wrap every angle into [-pi/2, pi/2). All three families have period pi.
AngleSet canonicalize(const AngleSet& angles);

using Correlation = std::function<double(double theta_a, double theta_b)>;

/// E(a,b) + E(a,b') + E(a',b) - E(a',b')
double chsh(const Correlation& correlation, const AngleSet& angles);

// E(ta, tb) = phi(ta)^T M phi(tb), phi(t) = (1, cos t, sin t, cos 2t, sin 2t).
// Exact whenever each side enters through cos^2, cos sin and sin^2 of its own
// angle, which holds for every engine that applies the rotation as a 2x2 unitary.
class TrigSurface {
 public:
  static constexpr int kBasis = 5;
  using Matrix = std::array<std::array<double, kBasis>, kBasis>;

  /// Fit from the 5 x 5 grid theta_k = 2 pi k / 5. 25 evaluations.
  static TrigSurface fit(const Correlation& correlation);

  double operator()(double theta_a, double theta_b) const;
  double chsh(const AngleSet& angles) const;
  const Matrix& coefficients() const { return m_; }

 private:
  Matrix m_{};
};

struct Polarization {
  int n = 1;
};
struct Ecs {
  double alpha = 1.0;
};
struct Ets {
  double V = 10.0;
  double d = 5.0;
};
using Family = std::variant<Polarization, Ecs, Ets>;

// automatic: polarization uses the closed form when eta_before == 1 and the
// Fock simulation otherwise; ECS uses the dyad algebra; ETS the quadrature.
enum class Engine { automatic, closed_form, oracle };

std::string engine_name(const Family& family, Engine resolved);

struct Scenario {
  Family family;
  LossPlacement loss;
  Engine engine = Engine::automatic;
  int ets_order = 32;  // quadrature order for the ETS oracle
};

/// The concrete engine `automatic` resolves to.
Engine resolve_engine(const Scenario& scenario);

/// Correlation E(theta_a, theta_b) of a scenario. Expensive set-up (pre-loss
/// states, quadrature tables) is done once here.
Correlation make_correlation(const Scenario& scenario);

struct BellResult {
  double b_max = 0.0;
  AngleSet angles;
  std::string engine_used;
  int n_restarts = 0;
  bool converged = false;
};

struct OptimizeOptions {
  int starts_per_axis = 4;    // grid of starts_per_axis^4 starting points
  double grid_offset = 0.0;   // shift of every grid coordinate, radians
  double tol = 1e-10;
  int max_iter = 4000;
};

/// Multi-start simplex maximization of |B| for a generic correlation.
/// Throws NumericalError if the result exceeds the Tsirelson bound.
BellResult optimize_chsh(const Correlation& correlation, const OptimizeOptions& options = {});

/// Same, for a scenario; surface-capable engines are fitted first and the
/// fit is verified against a direct evaluation.
BellResult optimize_chsh(const Scenario& scenario, const OptimizeOptions& options = {});

/// 2(1-eta)^(2n) + 2 sqrt2 [1-(1-eta)^n]^2
double closed_form_bmax_p(int n, double eta);

/// 1 - (3 - 2 sqrt2)^(1/n)
double closed_form_threshold_p(int n);

enum class ThresholdStatus { found, no_threshold };

struct ThresholdResult {
  ThresholdStatus status = ThresholdStatus::found;
  double eta_star = 0.0;
  std::vector<std::pair<double, double>> prescan;  // (eta_after, b_max)
};

class MonotonicityError : public NumericalError {
 public:
  MonotonicityError(const std::string& what, std::vector<std::pair<double, double>> prescan)
      : NumericalError(what), prescan_(std::move(prescan)) {}
  const std::vector<std::pair<double, double>>& prescan() const { return prescan_; }

 private:
  std::vector<std::pair<double, double>> prescan_;
};

/// Smallest eta_after at which b_max exceeds 2, with eta_before and the
/// family fixed by `scenario` (its eta_after is ignored). An 11-point
/// prescan must show b_max - 2 changing sign once and b_max non-decreasing
/// above the last non-violating point; bisection then runs on that cell.
ThresholdResult threshold_eta2(const Scenario& scenario, double tol = 1e-4,
                               const OptimizeOptions& options = {});

}  // namespace bellsim::bell
