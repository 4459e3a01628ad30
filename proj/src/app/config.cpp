#include "bellsim/app/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

#include <fmt/format.h>

namespace bellsim::app {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(const std::string& text, const std::string& where) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
    throw ConfigError(fmt::format("{}: '{}' is not a finite number", where, text));
  }
  return v;
}

int to_int(const std::string& text, const std::string& where) {
  int v = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) throw ConfigError(fmt::format("{}: '{}' is not an integer", where, text));
  return v;
}

bool to_bool(const std::string& text, const std::string& where) {
  if (text == "true" || text == "yes" || text == "1") return true;
  if (text == "false" || text == "no" || text == "0") return false;
  throw ConfigError(fmt::format("{}: '{}' is not a boolean", where, text));
}

void reject_unknown(const IniDocument::Section& section, const std::set<std::string>& allowed,
                    const std::string& source) {
  for (const auto& [key, value] : section.values) {
    if (!allowed.contains(key)) {
      throw ConfigError(fmt::format("{}: unknown key '{}' in [{}]", source, key, section.name));
    }
  }
}

}  // namespace

const IniDocument::Section* IniDocument::find(const std::string& name) const {
  for (const Section& s : sections) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

IniDocument parse_ini(std::istream& in, const std::string& source) {
  IniDocument doc;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = fmt::format("{}:{}", source, number);
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(fmt::format("{}: unterminated section header", where));
      const std::string name = trim(line.substr(1, line.size() - 2));
      if (name.empty()) throw ConfigError(fmt::format("{}: empty section name", where));
      if (doc.find(name)) throw ConfigError(fmt::format("{}: duplicate section [{}]", where, name));
      doc.sections.push_back({name, number, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(fmt::format("{}: expected key = value", where));
    if (doc.sections.empty()) throw ConfigError(fmt::format("{}: key outside of any section", where));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) throw ConfigError(fmt::format("{}: empty key or value", where));
    if (!doc.sections.back().values.emplace(key, value).second) {
      throw ConfigError(fmt::format("{}: duplicate key '{}'", where, key));
    }
  }
  return doc;
}

std::vector<double> Axis::values() const {
  std::vector<double> v(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    // Endpoints exact.
    v[i] = i == steps - 1 ? stop : start + (stop - start) * i / (steps - 1);
  }
  return v;
}

bell::Family make_family(const std::string& family, std::optional<int> n, std::optional<double> alpha,
                         std::optional<double> V, std::optional<double> d) {
  auto require = [&](bool present, const char* what) {
    if (!present) throw ConfigError(fmt::format("family '{}' requires {}", family, what));
  };
  if (family == "pol" || family == "polarization") {
    require(n.has_value(), "n");
    if (*n < 1 || *n > fockspace::kMaxPhotons) {
      throw ConfigError(fmt::format("n must lie in [1, {}], got {}", fockspace::kMaxPhotons, *n));
    }
    return bell::Polarization{*n};
  }
  if (family == "ecs") {
    require(alpha.has_value(), "alpha");
    if (!(*alpha > 0.0 && *alpha <= 4.0)) throw ConfigError(fmt::format("alpha must lie in (0, 4], got {}", *alpha));
    return bell::Ecs{*alpha};
  }
  if (family == "ets") {
    require(V.has_value() && d.has_value(), "V and d");
    if (!(*V >= 1.0)) throw ConfigError(fmt::format("V must be >= 1, got {}", *V));
    if (!(*d > 0.0)) throw ConfigError(fmt::format("d must be > 0, got {}", *d));
    return bell::Ets{*V, *d};
  }
  throw ConfigError(fmt::format("unknown family '{}' (expected pol, ecs or ets)", family));
}

bell::Engine parse_engine(const std::string& name) {
  if (name == "auto") return bell::Engine::automatic;
  if (name == "closed_form") return bell::Engine::closed_form;
  if (name == "oracle") return bell::Engine::oracle;
  throw ConfigError(fmt::format("unknown engine '{}' (expected auto, closed_form or oracle)", name));
}

SweepConfig parse_sweep_config(std::istream& in, const std::string& source) {
  const IniDocument doc = parse_ini(in, source);
  SweepConfig config;

  const IniDocument::Section* scenario = doc.find("scenario");
  if (!scenario) throw ConfigError(fmt::format("{}: missing [scenario] section", source));
  reject_unknown(*scenario, {"family", "n", "alpha", "V", "d", "eta1", "eta2", "engine"}, source);
  auto get = [&](const IniDocument::Section& s, const std::string& key) -> std::optional<std::string> {
    const auto it = s.values.find(key);
    if (it == s.values.end()) return std::nullopt;
    return it->second;
  };
  auto where = [&](const IniDocument::Section& s, const std::string& key) {
    return fmt::format("{}: [{}] {}", source, s.name, key);
  };
  auto number = [&](const IniDocument::Section& s, const std::string& key) -> std::optional<double> {
    if (auto v = get(s, key)) return to_double(*v, where(s, key));
    return std::nullopt;
  };

  const auto family = get(*scenario, "family");
  if (!family) throw ConfigError(fmt::format("{}: [scenario] needs a family", source));
  std::optional<int> n;
  if (auto v = get(*scenario, "n")) n = to_int(*v, where(*scenario, "n"));
  config.scenario.family = make_family(*family, n, number(*scenario, "alpha"), number(*scenario, "V"),
                                       number(*scenario, "d"));
  config.scenario.loss.eta_before = number(*scenario, "eta1").value_or(1.0);
  config.scenario.loss.eta_after = number(*scenario, "eta2").value_or(1.0);
  if (auto e = get(*scenario, "engine")) config.scenario.engine = parse_engine(*e);

  const std::string& fam = *family;
  const std::set<std::string> family_axes =
      fam == "ecs" ? std::set<std::string>{"alpha"}
                   : fam == "ets" ? std::set<std::string>{"V", "d"} : std::set<std::string>{"n"};
  std::set<std::string> seen;
  for (const IniDocument::Section& s : doc.sections) {
    if (!s.name.starts_with("axis.")) continue;
    reject_unknown(s, {"start", "stop", "steps"}, source);
    Axis axis;
    axis.name = s.name.substr(5);
    if (axis.name != "eta1" && axis.name != "eta2" && axis.name != "gamma_t" && !family_axes.contains(axis.name)) {
      throw ConfigError(fmt::format("{}: axis '{}' does not apply to family '{}'", source, axis.name, fam));
    }
    if ((axis.name == "eta1" && seen.contains("gamma_t")) || (axis.name == "gamma_t" && seen.contains("eta1"))) {
      throw ConfigError(fmt::format("{}: eta1 and gamma_t axes are mutually exclusive", source));
    }
    seen.insert(axis.name);
    const auto start = number(s, "start");
    const auto stop = number(s, "stop");
    const auto steps = get(s, "steps");
    if (!start || !stop || !steps) {
      throw ConfigError(fmt::format("{}: [{}] needs start, stop and steps", source, s.name));
    }
    axis.start = *start;
    axis.stop = *stop;
    axis.steps = to_int(*steps, where(s, "steps"));
    if (axis.steps < 2) throw ConfigError(fmt::format("{}: [{}] steps must be >= 2", source, s.name));
    config.axes.push_back(axis);
  }
  if (config.axes.empty()) throw ConfigError(fmt::format("{}: at least one [axis.NAME] section is required", source));

  if (const IniDocument::Section* opts = doc.find("options")) {
    reject_unknown(*opts, {"output", "jobs", "wall_time", "starts_per_axis", "ets_order", "tol", "max_iter"},
                   source);
    config.output_path = get(*opts, "output").value_or("");
    if (auto v = get(*opts, "jobs")) config.jobs = to_int(*v, where(*opts, "jobs"));
    if (auto v = get(*opts, "wall_time")) config.wall_time = to_bool(*v, where(*opts, "wall_time"));
    if (auto v = get(*opts, "starts_per_axis")) {
      config.optimizer.starts_per_axis = to_int(*v, where(*opts, "starts_per_axis"));
    }
    if (auto v = get(*opts, "ets_order")) config.scenario.ets_order = to_int(*v, where(*opts, "ets_order"));
    if (auto v = number(*opts, "tol")) config.optimizer.tol = *v;
    if (auto v = get(*opts, "max_iter")) config.optimizer.max_iter = to_int(*v, where(*opts, "max_iter"));
    if (config.jobs < 0) throw ConfigError(fmt::format("{}: jobs must be >= 0", source));
    if (config.optimizer.starts_per_axis < 1 || config.optimizer.starts_per_axis > 8) {
      throw ConfigError(fmt::format("{}: starts_per_axis must lie in [1, 8]", source));
    }
    if (config.scenario.ets_order < 8 || config.scenario.ets_order > 48) {
      throw ConfigError(fmt::format("{}: ets_order must lie in [8, 48]", source));
    }
    if (!(config.optimizer.tol > 0.0) || config.optimizer.max_iter < 1) {
      throw ConfigError(fmt::format("{}: tol and max_iter must be positive", source));
    }
  }
  for (const IniDocument::Section& s : doc.sections) {
    if (s.name != "scenario" && s.name != "options" && !s.name.starts_with("axis.")) {
      throw ConfigError(fmt::format("{}:{}: unknown section [{}]", source, s.line, s.name));
    }
  }
  return config;
}

SweepConfig load_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config file '{}'", path));
  return parse_sweep_config(in, path);
}

}  // namespace bellsim::app
