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
#include <cstring>
#include <exception>
#include <limits>
#include <memory>
#include <string>
#include <string_view>

#include "sirtest/errors.hpp"
#include "sirtest/scenario.hpp"
#include "sirtest/sirtest.h"

struct sirtest_scenario {
  sirtest::ScenarioConfig config;
};

struct sirtest_report {
  sirtest::ComparisonReport report;
  std::string summary;
};

namespace {

thread_local std::string last_error;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double or_nan(const std::optional<double>& v) { return v ? *v : kNaN; }

sirtest_status fail(sirtest_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
sirtest_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return SIRTEST_OK;
  } catch (const sirtest::ConfigError& e) {
    return fail(SIRTEST_ERR_CONFIG, e.what());
  } catch (const sirtest::IoError& e) {
    return fail(SIRTEST_ERR_IO, e.what());
  } catch (const sirtest::DomainError& e) {
    return fail(SIRTEST_ERR_DOMAIN, e.what());
  } catch (const sirtest::RangeError& e) {
    return fail(SIRTEST_ERR_DOMAIN, e.what());
  } catch (const std::exception& e) {
    return fail(SIRTEST_ERR_RUNTIME, e.what());
  } catch (...) {
    return fail(SIRTEST_ERR_RUNTIME, "unknown error");
  }
}

double* param_slot(sirtest::ScenarioConfig& c, std::string_view name) {
  if (name == "beta") return &c.params.beta;
  if (name == "gamma") return &c.params.gamma;
  if (name == "u_min") return &c.constraints.u_min;
  if (name == "u_max") return &c.constraints.u_max;
  if (name == "i_bar") return &c.constraints.i_bar;
  if (name == "i0") return &c.initial.i;
  if (name == "horizon") return &c.horizon;
  if (name == "ode_step") return &c.ode_step;
  if (name == "policy_interval") return &c.policy_interval;
  if (name == "inflation") return &c.estimation.inflation;
  if (name == "window") return &c.estimation.window;
  return nullptr;
}

}  // namespace

extern "C" {

const char* sirtest_version(void) { return "1.0.0"; }

const char* sirtest_last_error(void) { return last_error.c_str(); }

const char* sirtest_status_name(sirtest_status status) {
  switch (status) {
    case SIRTEST_OK:
      return "ok";
    case SIRTEST_ERR_CONFIG:
      return "config error";
    case SIRTEST_ERR_RUNTIME:
      return "runtime error";
    case SIRTEST_ERR_IO:
      return "I/O error";
    case SIRTEST_ERR_DOMAIN:
      return "domain error";
    case SIRTEST_ERR_INVALID_ARGUMENT:
      return "invalid argument";
  }
  return "unknown status";
}

sirtest_status sirtest_scenario_load(const char* path, sirtest_scenario** out) {
  if (!path || !out) return fail(SIRTEST_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new sirtest_scenario{sirtest::load_config(path)}; });
}

sirtest_status sirtest_scenario_parse(const char* json_text, sirtest_scenario** out) {
  if (!json_text || !out) return fail(SIRTEST_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new sirtest_scenario{sirtest::parse_config(json_text)}; });
}

sirtest_status sirtest_scenario_clone(const sirtest_scenario* scenario, sirtest_scenario** out) {
  if (!scenario || !out) return fail(SIRTEST_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = new sirtest_scenario{*scenario}; });
}

void sirtest_scenario_free(sirtest_scenario* scenario) { delete scenario; }

sirtest_status sirtest_scenario_set_seed(sirtest_scenario* scenario, uint64_t seed) {
  if (!scenario) return fail(SIRTEST_ERR_INVALID_ARGUMENT, "null scenario");
  if (scenario->config.noise) scenario->config.noise->seed = seed;
  return SIRTEST_OK;
}

sirtest_status sirtest_scenario_disable_noise(sirtest_scenario* scenario) {
  if (!scenario) return fail(SIRTEST_ERR_INVALID_ARGUMENT, "null scenario");
  scenario->config.noise.reset();
  return SIRTEST_OK;
}

sirtest_status sirtest_scenario_set_param(sirtest_scenario* scenario, const char* name,
                                          double value) {
  if (!scenario || !name) return fail(SIRTEST_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    sirtest::ScenarioConfig next = scenario->config;
    double* slot = param_slot(next, name);
    if (!slot) throw sirtest::ConfigError(std::string("unknown parameter '") + name + "'");
    *slot = value;
    if (std::string_view(name) == "i0") next.initial.s = 1.0 - next.initial.i - next.initial.r;
    sirtest::validate(next);
    scenario->config = std::move(next);
  });
}

sirtest_status sirtest_scenario_get_param(const sirtest_scenario* scenario, const char* name,
                                          double* out) {
  if (!scenario || !name || !out) return fail(SIRTEST_ERR_INVALID_ARGUMENT, "null argument");
  sirtest::ScenarioConfig copy = scenario->config;
  const double* slot = param_slot(copy, name);
  if (!slot) return fail(SIRTEST_ERR_CONFIG, std::string("unknown parameter '") + name + "'");
  *out = *slot;
  return SIRTEST_OK;
}

sirtest_status sirtest_scenario_preflight(const sirtest_scenario* scenario,
                                          sirtest_preflight* out) {
  if (!scenario || !out) return fail(SIRTEST_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const sirtest::Preflight p = sirtest::preflight(scenario->config);
    out->rho = p.peak.rho;
    out->peak = p.peak.i_peak;
    out->strategy1_optimal = p.strategy1_optimal;
    out->has_outbreak = p.s_at_outbreak.has_value();
    out->s_at_outbreak = or_nan(p.s_at_outbreak);
    out->required_control = or_nan(p.required_at_outbreak);
    out->feasible = p.feasible;
  });
}

sirtest_status sirtest_scenario_simulated_peak(const sirtest_scenario* scenario, double* out) {
  if (!scenario || !out) return fail(SIRTEST_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    sirtest::ScenarioConfig c = scenario->config;
    c.constant_rate.reset();
    c.stop_below = 0.0;
    *out = sirtest::run_strategy(c, sirtest::PolicyKind::kConstant, {}).max_infected;
  });
}

sirtest_status sirtest_run(const sirtest_scenario* scenario, sirtest_report** out) {
  if (!scenario || !out) return fail(SIRTEST_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto report = std::make_unique<sirtest_report>();
    report->report = sirtest::run_scenario(scenario->config);
    report->summary = sirtest::summary_json(report->report);
    *out = report.release();
  });
}

void sirtest_report_free(sirtest_report* report) { delete report; }

size_t sirtest_report_strategy_count(const sirtest_report* report) {
  return report ? report->report.outcomes.size() : 0;
}

sirtest_status sirtest_report_strategy(const sirtest_report* report, size_t index,
                                       sirtest_strategy_summary* out) {
  if (!report || !out) return fail(SIRTEST_ERR_INVALID_ARGUMENT, "null argument");
  if (index >= report->report.outcomes.size())
    return fail(SIRTEST_ERR_INVALID_ARGUMENT, "strategy index out of range");
  const auto& o = report->report.outcomes[index];
  std::memset(out, 0, sizeof *out);
  const auto name = sirtest::policy_kind_name(o.kind);
  std::memcpy(out->name, name.data(), std::min(name.size(), sizeof out->name - 1));
  out->total_cost = o.cost.total_cost;
  for (int k = 0; k < 3; ++k) out->phase_cost[k] = o.cost.per_phase[k];
  out->gap_vs_optimal = or_nan(o.cost.gap_vs_optimal);
  out->t_b = or_nan(o.record.t_b);
  out->t_h = or_nan(o.record.t_h);
  out->threshold_crossing = or_nan(o.record.threshold_crossing);
  out->infeasible_at = or_nan(o.record.infeasible_at);
  out->max_infected = o.max_infected;
  out->end_time = o.record.end();
  out->feasible = o.feasible;
  out->nearly_feasible = o.nearly_feasible;
  return SIRTEST_OK;
}

sirtest_status sirtest_report_dominance(const sirtest_report* report, sirtest_dominance* out) {
  if (!report || !out) return fail(SIRTEST_ERR_INVALID_ARGUMENT, "null argument");
  if (!report->report.dominance)
    return fail(SIRTEST_ERR_DOMAIN, "report has no optimal/robust pair");
  const auto& d = *report->report.dominance;
  out->control_dominates = d.control_dominates;
  out->min_control_margin = d.min_control_margin;
  out->earlier_entry = d.earlier_entry;
  out->later_exit = d.later_exit;
  out->cost_ordering = d.cost_ordering;
  out->cumulative_ordering = d.cumulative_ordering;
  out->susceptible_dominates = d.susceptible_dominates;
  return SIRTEST_OK;
}

sirtest_status sirtest_report_gap(const sirtest_report* report, sirtest_gap* out) {
  if (!report || !out) return fail(SIRTEST_ERR_INVALID_ARGUMENT, "null argument");
  if (!report->report.gap) return fail(SIRTEST_ERR_DOMAIN, "report has no gap evaluation");
  const auto& g = *report->report.gap;
  *out = {g.window.from, g.window.to, g.formula, g.cost_difference};
  return SIRTEST_OK;
}

sirtest_status sirtest_report_summary_json(const sirtest_report* report, char* buffer,
                                           size_t capacity, size_t* required) {
  if (!report) return fail(SIRTEST_ERR_INVALID_ARGUMENT, "null report");
  const size_t need = report->summary.size() + 1;
  if (required) *required = need;
  if (!buffer) return SIRTEST_OK;
  if (capacity < need) return fail(SIRTEST_ERR_INVALID_ARGUMENT, "buffer too small for summary");
  std::memcpy(buffer, report->summary.c_str(), need);
  return SIRTEST_OK;
}

sirtest_status sirtest_report_export(const sirtest_report* report, const char* out_dir) {
  if (!report || !out_dir) return fail(SIRTEST_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { sirtest::export_report(report->report, out_dir); });
}

sirtest_status sirtest_peak_infection(double beta, double gamma, double u_floor, double s_a,
                                      double i_a, sirtest_peak* out) {
  if (!out) return fail(SIRTEST_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto p = sirtest::peak_infection({beta, gamma}, u_floor, s_a, i_a);
    *out = {p.rho, p.i_peak, p.s_at_peak, p.future_peak};
  });
}

}  // extern "C"
