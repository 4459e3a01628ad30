#pragma once

#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bellsim/bell.hpp"

namespace bellsim::app {

// Malformed or out-of-range user input (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sections of key = value lines. '#' and ';' start comments.
struct IniDocument {
  struct Section {
    std::string name;
    int line = 0;
    std::map<std::string, std::string> values;
  };
  std::vector<Section> sections;

  const Section* find(const std::string& name) const;
};

IniDocument parse_ini(std::istream& in, const std::string& source);

struct Axis {
  std::string name;  // eta1, eta2, gamma_t, n, alpha, V or d
  double start = 0.0;
  double stop = 1.0;
  int steps = 2;

  std::vector<double> values() const;
};

struct SweepConfig {
  bell::Scenario scenario;
  std::vector<Axis> axes;
  std::string output_path;  // empty: stdout
  int jobs = 0;             // 0: hardware concurrency
  bool wall_time = false;
  bell::OptimizeOptions optimizer;
};

SweepConfig parse_sweep_config(std::istream& in, const std::string& source);
SweepConfig load_sweep_config(const std::string& path);

/// "pol" / "polarization", "ecs", "ets" plus the family parameters.
bell::Family make_family(const std::string& family, std::optional<int> n, std::optional<double> alpha,
                         std::optional<double> V, std::optional<double> d);

bell::Engine parse_engine(const std::string& name);

}  // namespace bellsim::app
