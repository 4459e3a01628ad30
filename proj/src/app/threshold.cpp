#include "bellsim/app/threshold.hpp"

#include <variant>

namespace bellsim::app {

nlohmann::ordered_json scenario_json(const bell::Scenario& scenario) {
  nlohmann::ordered_json j;
  if (const auto* p = std::get_if<bell::Polarization>(&scenario.family)) {
    j["family"] = "pol";
    j["n"] = p->n;
  } else if (const auto* e = std::get_if<bell::Ecs>(&scenario.family)) {
    j["family"] = "ecs";
    j["alpha"] = e->alpha;
  } else {
    const auto& t = std::get<bell::Ets>(scenario.family);
    j["family"] = "ets";
    j["V"] = t.V;
    j["d"] = t.d;
  }
  j["eta1"] = scenario.loss.eta_before;
  j["engine"] = bell::engine_name(scenario.family, bell::resolve_engine(scenario));
  return j;
}

nlohmann::ordered_json run_threshold(const ThresholdRequest& request) {
  const bell::ThresholdResult r = bell::threshold_eta2(request.scenario, request.tol);
  nlohmann::ordered_json j;
  j["status"] = r.status == bell::ThresholdStatus::found ? "found" : "no_threshold";
  j["eta_star"] = r.status == bell::ThresholdStatus::found ? nlohmann::ordered_json(r.eta_star) : nlohmann::ordered_json(nullptr);
  j["tol"] = request.tol;
  j["scenario"] = scenario_json(request.scenario);
  nlohmann::ordered_json scan = nlohmann::ordered_json::array();
  for (const auto& [eta, b] : r.prescan) scan.push_back({{"eta2", eta}, {"b_max", b}});
  j["prescan"] = scan;
  return j;
}

}  // namespace bellsim::app
