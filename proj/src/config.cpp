// Copyright 2026 The sirtest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>
#include "sirtest/errors.hpp"
#include "sirtest/scenario.hpp"

namespace sirtest {

using nlohmann::json;

namespace {

const json& section(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw ConfigError(std::string("missing section '") + key + "'");
  if (!it->is_object()) throw ConfigError(std::string("section '") + key + "' must be an object");
  return *it;
}

double number(const json& obj, const char* section_name, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end())
    throw ConfigError(std::string("missing field '") + section_name + "." + key + "'");
  if (it->is_string()) {
    const auto s = it->get<std::string>();
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
  }
  if (!it->is_number())
    throw ConfigError(std::string("field '") + section_name + "." + key + "' must be a number");
  return it->get<double>();
}

double number_or(const json& obj, const char* section_name, const char* key, double fallback) {
  return obj.contains(key) ? number(obj, section_name, key) : fallback;
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

IntegrationOptions ScenarioConfig::integration() const {
  IntegrationOptions o;
  o.horizon = horizon;
  o.step = ode_step;
  o.policy_interval = policy_interval;
  o.stop_below = stop_below;
  return o;
}

void validate(const ScenarioConfig& c) {
  validate(c.params);
  validate(c.constraints);
  validate(c.initial);
  if (!(c.ode_step > 0.0)) throw ConfigError("time.ode_step must be positive");
  if (!(c.horizon >= c.ode_step)) throw ConfigError("time.horizon must be at least one step");
  if (!(c.policy_interval >= c.ode_step))
    throw ConfigError("time.policy_interval must be at least the ODE step");
  if (!(c.stop_below >= 0.0)) throw ConfigError("time.stop_below must be >= 0");
  if (c.noise && std::isnan(c.noise->snr_db)) throw ConfigError("noise.snr_db must be a number");
  if (!(c.estimation.window >= 2.0)) throw ConfigError("estimation.window must be >= 2 days");
  if (!(c.estimation.inflation >= 0.0)) throw ConfigError("estimation.inflation must be >= 0");
  if (c.estimation.smoothing < 1) throw ConfigError("estimation.smoothing must be >= 1");
  if (c.strategies.empty()) throw ConfigError("strategies must not be empty");
  for (std::size_t a = 0; a < c.strategies.size(); ++a)
    for (std::size_t b = a + 1; b < c.strategies.size(); ++b)
      if (c.strategies[a] == c.strategies[b]) throw ConfigError("duplicate strategy");
  if (c.constant_rate &&
      !(*c.constant_rate >= c.constraints.u_min && *c.constant_rate <= c.constraints.u_max))
    throw ConfigError("constant_rate outside [u_min, u_max]");
}

ScenarioConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  ScenarioConfig c;
  const json& p = section(doc, "params");
  c.params = {number(p, "params", "beta"), number(p, "params", "gamma")};
  const json& k = section(doc, "constraints");
  c.constraints = {number(k, "constraints", "u_min"), number(k, "constraints", "u_max"),
                   number(k, "constraints", "i_bar")};
  const json& x = section(doc, "initial");
  c.initial = {number(x, "initial", "S"), number(x, "initial", "I"), number(x, "initial", "R")};
  const json& t = section(doc, "time");
  c.horizon = number(t, "time", "horizon");
  c.ode_step = number(t, "time", "ode_step");
  c.policy_interval = number(t, "time", "policy_interval");
  c.stop_below = number_or(t, "time", "stop_below", c.stop_below);

  if (auto it = doc.find("noise"); it != doc.end() && !it->is_null()) {
    if (!it->is_object()) throw ConfigError("section 'noise' must be an object or null");
    NoiseConfig n;
    n.snr_db = number(*it, "noise", "snr_db");
    if (auto sd = it->find("seed"); sd != it->end()) {
      if (!sd->is_number_unsigned()) throw ConfigError("noise.seed must be a non-negative integer");
      n.seed = sd->get<std::uint64_t>();
    }
    if (!(std::isinf(n.snr_db) && n.snr_db > 0)) c.noise = n;
  }

  const json& e = section(doc, "estimation");
  {
    auto it = e.find("method");
    if (it == e.end() || !it->is_string()) throw ConfigError("missing field 'estimation.method'");
    const auto m = it->get<std::string>();
    if (m == "regression")
      c.estimation.method = EstimationMethod::kRegression;
    else if (m == "oracle")
      c.estimation.method = EstimationMethod::kOracle;
    else
      throw ConfigError("estimation.method must be 'regression' or 'oracle'");
  }
  c.estimation.window = number(e, "estimation", "window");
  c.estimation.inflation = number(e, "estimation", "inflation");
  const double smoothing = number_or(e, "estimation", "smoothing", 1.0);
  if (smoothing != std::floor(smoothing)) throw ConfigError("estimation.smoothing must be an integer");
  c.estimation.smoothing = static_cast<int>(smoothing);

  auto s = doc.find("strategies");
  if (s == doc.end() || !s->is_array()) throw ConfigError("missing array 'strategies'");
  for (const auto& item : *s) {
    if (!item.is_string()) throw ConfigError("strategies must be names");
    const auto kind = parse_policy_kind(item.get<std::string>());
    if (!kind) throw ConfigError("unknown strategy '" + item.get<std::string>() + "'");
    c.strategies.push_back(*kind);
  }
  if (doc.contains("constant_rate")) c.constant_rate = number(doc, "", "constant_rate");

  validate(c);
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_config(text.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string dump_config(const ScenarioConfig& c) {
  json doc;
  doc["params"] = {{"beta", c.params.beta}, {"gamma", c.params.gamma}};
  doc["constraints"] = {{"u_min", c.constraints.u_min},
                        {"u_max", c.constraints.u_max},
                        {"i_bar", c.constraints.i_bar}};
  doc["initial"] = {{"S", c.initial.s}, {"I", c.initial.i}, {"R", c.initial.r}};
  doc["time"] = {{"horizon", c.horizon},
                 {"ode_step", c.ode_step},
                 {"policy_interval", c.policy_interval},
                 {"stop_below", c.stop_below}};
  if (c.noise)
    doc["noise"] = {{"snr_db", finite_or_null(c.noise->snr_db)}, {"seed", c.noise->seed}};
  else
    doc["noise"] = nullptr;
  doc["estimation"] = {
      {"method", c.estimation.method == EstimationMethod::kOracle ? "oracle" : "regression"},
      {"window", c.estimation.window},
      {"inflation", c.estimation.inflation},
      {"smoothing", c.estimation.smoothing}};
  json names = json::array();
  for (auto k : c.strategies) names.push_back(std::string(policy_kind_name(k)));
  doc["strategies"] = names;
  if (c.constant_rate) doc["constant_rate"] = *c.constant_rate;
  return doc.dump(2);
}

}  // namespace sirtest
