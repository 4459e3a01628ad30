#pragma once

#include <json.hpp>

#include "bellsim/bell.hpp"

namespace bellsim::app {

struct ThresholdRequest {
  bell::Scenario scenario;
  double tol = 1e-4;
};

/// {"status", "eta_star" (null without threshold), "tol", "scenario", "prescan"}
nlohmann::ordered_json run_threshold(const ThresholdRequest& request);

nlohmann::ordered_json scenario_json(const bell::Scenario& scenario);

}  // namespace bellsim::app
