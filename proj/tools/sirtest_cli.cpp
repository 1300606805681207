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

// Command-line front end. Talks to the toolkit only through the C API.

#include <cmath>
#include <cstdio>
#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sirtest/sirtest.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

struct ScenarioDeleter {
  void operator()(sirtest_scenario* s) const { sirtest_scenario_free(s); }
};
struct ReportDeleter {
  void operator()(sirtest_report* r) const { sirtest_report_free(r); }
};
using ScenarioPtr = std::unique_ptr<sirtest_scenario, ScenarioDeleter>;
using ReportPtr = std::unique_ptr<sirtest_report, ReportDeleter>;

int exit_code(sirtest_status status) {
  switch (status) {
    case SIRTEST_OK:
      return kExitOk;
    case SIRTEST_ERR_CONFIG:
    case SIRTEST_ERR_INVALID_ARGUMENT:
      return kExitConfig;
    default:
      return kExitRuntime;
  }
}

int report_failure(sirtest_status status) {
  std::fprintf(stderr, "sirtest: %s: %s\n", sirtest_status_name(status), sirtest_last_error());
  return exit_code(status);
}

std::string fmt_time(double t) {
  if (std::isnan(t)) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", t);
  return buf;
}

int load(const std::string& path, ScenarioPtr& out) {
  sirtest_scenario* raw = nullptr;
  const sirtest_status st = sirtest_scenario_load(path.c_str(), &raw);
  if (st != SIRTEST_OK) return report_failure(st);
  out.reset(raw);
  return kExitOk;
}

int cmd_check(const std::string& config) {
  ScenarioPtr scenario;
  if (int rc = load(config, scenario)) return rc;
  sirtest_preflight p;
  const sirtest_status st = sirtest_scenario_preflight(scenario.get(), &p);
  if (st != SIRTEST_OK) return report_failure(st);
  double i_bar = 0, u_min = 0, u_max = 0;
  sirtest_scenario_get_param(scenario.get(), "i_bar", &i_bar);
  sirtest_scenario_get_param(scenario.get(), "u_min", &u_min);
  sirtest_scenario_get_param(scenario.get(), "u_max", &u_max);
  std::printf("config ok: %s\n", config.c_str());
  std::printf("rho = (gamma + u_min) / beta      %.10g\n", p.rho);
  std::printf("peak I under constant u_min       %.10g (threshold %.10g)\n", p.peak, i_bar);
  std::printf("constant u_min is optimal         %s\n", p.strategy1_optimal ? "yes" : "no");
  if (p.has_outbreak) {
    std::printf("S when I first reaches threshold  %.10g\n", p.s_at_outbreak);
    std::printf("required control beta*S - gamma   %.10g (bounds [%.4g, %.4g])\n",
                p.required_control, u_min, u_max);
  }
  std::printf("feasible                          %s\n", p.feasible ? "yes" : "no");
  return kExitOk;
}

int cmd_run(const std::string& config, const std::string& out_dir,
            const std::optional<std::uint64_t>& seed, bool no_noise) {
  ScenarioPtr scenario;
  if (int rc = load(config, scenario)) return rc;
  if (seed) sirtest_scenario_set_seed(scenario.get(), *seed);
  if (no_noise) sirtest_scenario_disable_noise(scenario.get());

  sirtest_report* raw = nullptr;
  sirtest_status st = sirtest_run(scenario.get(), &raw);
  if (st != SIRTEST_OK) return report_failure(st);
  ReportPtr report(raw);

  double i_bar = 0;
  sirtest_scenario_get_param(scenario.get(), "i_bar", &i_bar);
  std::printf("%-9s %12s %10s %10s %12s %9s %s\n", "strategy", "total_cost", "t_b", "t_h",
              "max_I", "max_I/Ibar", "verdict");
  for (size_t k = 0; k < sirtest_report_strategy_count(report.get()); ++k) {
    sirtest_strategy_summary s;
    sirtest_report_strategy(report.get(), k, &s);
    const char* verdict = s.feasible ? "feasible" : s.nearly_feasible ? "nearly-feasible"
                                                                      : "infeasible";
    std::printf("%-9s %12.6f %10s %10s %12.8f %9.4f %s\n", s.name, s.total_cost,
                fmt_time(s.t_b).c_str(), fmt_time(s.t_h).c_str(), s.max_infected,
                s.max_infected / i_bar, verdict);
  }
  sirtest_dominance d;
  if (sirtest_report_dominance(report.get(), &d) == SIRTEST_OK) {
    std::printf("robust vs optimal: u_hat>=u* %s, earlier entry %s, later exit %s, "
                "cost %s, cumulative %s\n",
                d.control_dominates ? "yes" : "no", d.earlier_entry ? "yes" : "no",
                d.later_exit ? "yes" : "no", d.cost_ordering ? "yes" : "no",
                d.cumulative_ordering ? "yes" : "no");
  }
  sirtest_gap g;
  if (sirtest_report_gap(report.get(), &g) == SIRTEST_OK) {
    std::printf("gap on [%.3f, %.3f]: formula %.6f, cost difference %.6f\n", g.from, g.to,
                g.formula, g.cost_difference);
  }
  if (!out_dir.empty()) {
    st = sirtest_report_export(report.get(), out_dir.c_str());
    if (st != SIRTEST_OK) return report_failure(st);
    std::printf("wrote %s\n", out_dir.c_str());
  }
  return kExitOk;
}

int cmd_sweep(const std::string& config, const std::string& param,
              const std::vector<double>& values) {
  ScenarioPtr base;
  if (int rc = load(config, base)) return rc;
  std::printf("%-12s %12s %14s %14s\n", param.c_str(), "rho", "peak_formula", "peak_simulated");
  std::vector<double> peaks;
  bool all_future = true;
  for (double v : values) {
    sirtest_scenario* raw = nullptr;
    sirtest_status st = sirtest_scenario_clone(base.get(), &raw);
    if (st != SIRTEST_OK) return report_failure(st);
    ScenarioPtr s(raw);
    st = sirtest_scenario_set_param(s.get(), param.c_str(), v);
    if (st != SIRTEST_OK) return report_failure(st);
    sirtest_preflight p;
    st = sirtest_scenario_preflight(s.get(), &p);
    if (st != SIRTEST_OK) return report_failure(st);
    double simulated = 0;
    st = sirtest_scenario_simulated_peak(s.get(), &simulated);
    if (st != SIRTEST_OK) return report_failure(st);
    sirtest_peak peak;
    double beta = 0, gamma = 0, u_min = 0, i0 = 0;
    sirtest_scenario_get_param(s.get(), "beta", &beta);
    sirtest_scenario_get_param(s.get(), "gamma", &gamma);
    sirtest_scenario_get_param(s.get(), "u_min", &u_min);
    sirtest_scenario_get_param(s.get(), "i0", &i0);
    sirtest_peak_infection(beta, gamma, u_min, 1.0 - i0, i0, &peak);
    all_future = all_future && peak.future_peak;
    peaks.push_back(p.peak);
    std::printf("%-12.6g %12.8f %14.10f %14.10f\n", v, p.rho, p.peak, simulated);
  }
  int expected = 0;
  if (param == "beta") expected = +1;
  if (param == "gamma" || param == "u_min") expected = -1;
  if (expected != 0 && peaks.size() > 1) {
    bool monotone = all_future;
    for (size_t k = 1; k < peaks.size(); ++k) {
      const double dv = values[k] - values[k - 1];
      const double dp = peaks[k] - peaks[k - 1];
      if (!(dv * dp * expected > 0)) monotone = false;
    }
    std::printf("peak %s in %s: %s\n", expected > 0 ? "increasing" : "decreasing",
                param.c_str(), monotone ? "yes" : "no");
  }
  return kExitOk;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument(item);
    out.push_back(v);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Testing-for-isolation control of SIR epidemics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(sirtest_version()));

  std::string config;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool no_noise = false;
  auto* run = app.add_subcommand("run", "simulate every configured strategy and compare");
  run->add_option("config", config, "scenario config (JSON)")->required();
  run->add_option("--out", out_dir, "directory for trajectory CSVs and summary.json");
  auto* seed_opt = run->add_option("--seed", seed, "override the noise seed");
  run->add_flag("--no-noise", no_noise, "observe the true states");

  std::string param;
  std::string values;
  auto* sweep = app.add_subcommand("sweep", "peak infection across one parameter");
  sweep->add_option("config", config, "scenario config (JSON)")->required();
  sweep->add_option("--param", param, "beta, gamma, u_min, i0, ...")->required();
  sweep->add_option("--values", values, "comma-separated values")->required();

  auto* check = app.add_subcommand("check", "validate a config and print feasibility verdicts");
  check->add_option("config", config, "scenario config (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  if (*run) {
    std::optional<std::uint64_t> s;
    if (*seed_opt) s = seed;
    return cmd_run(config, out_dir, s, no_noise);
  }
  if (*sweep) {
    std::vector<double> list;
    try {
      list = parse_list(values);
    } catch (const std::exception&) {
      std::fprintf(stderr, "sirtest: --values must be a comma-separated list of numbers\n");
      return kExitConfig;
    }
    if (list.empty()) {
      std::fprintf(stderr, "sirtest: --values is empty\n");
      return kExitConfig;
    }
    return cmd_sweep(config, param, list);
  }
  return cmd_check(config);
}
