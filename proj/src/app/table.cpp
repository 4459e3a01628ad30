#include "bellsim/app/table.hpp"

#include <fmt/format.h>

namespace bellsim::app {

bell::BellResult evaluate_point(const PointSpec& spec, const bell::OptimizeOptions& options) {
  return bell::optimize_chsh(spec.scenario, options);
}

std::string format_number(double x) { return fmt::format("{:.10g}", x); }

void write_csv(std::ostream& out, const std::string& title, const std::vector<PointResult>& rows,
               bool wall_time) {
  out << "# " << title << '\n';
  out << "# family,n,alpha,V,d,eta1,eta2,gamma_t,b_max,theta_a,theta_b,theta_a_prime,theta_b_prime,"
         "engine,converged";
  if (wall_time) out << ",wall_time";
  out << '\n';
  for (const PointResult& row : rows) {
    const bell::Scenario& s = row.spec.scenario;
    std::string family, n, alpha, V, d;
    if (const auto* p = std::get_if<bell::Polarization>(&s.family)) {
      family = "pol";
      n = std::to_string(p->n);
    } else if (const auto* e = std::get_if<bell::Ecs>(&s.family)) {
      family = "ecs";
      alpha = format_number(e->alpha);
    } else {
      const auto& t = std::get<bell::Ets>(s.family);
      family = "ets";
      V = format_number(t.V);
      d = format_number(t.d);
    }
    const bell::AngleSet& a = row.result.angles;
    out << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}", family, n, alpha, V, d,
                       format_number(s.loss.eta_before), format_number(s.loss.eta_after),
                       row.spec.gamma_t ? format_number(*row.spec.gamma_t) : "",
                       format_number(row.result.b_max), format_number(a.theta_a),
                       format_number(a.theta_b), format_number(a.theta_a_prime),
                       format_number(a.theta_b_prime), row.result.engine_used,
                       row.result.converged ? 1 : 0);
    if (wall_time) out << ',' << fmt::format("{:.6f}", row.wall_time);
    out << '\n';
  }
}

}  // namespace bellsim::app
