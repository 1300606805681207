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

#ifndef SIRTEST_SCENARIO_HPP
#define SIRTEST_SCENARIO_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sirtest/analysis.hpp"
#include "sirtest/closed_loop.hpp"
#include "sirtest/policy.hpp"
#include "sirtest/sir_dynamics.hpp"

namespace sirtest {

struct NoiseConfig {
  double snr_db = 55.0;
  std::uint64_t seed = 0;
};

struct EstimationConfig {
  EstimationMethod method = EstimationMethod::kRegression;
  double window = 14.0;
  double inflation = 0.05;
  int smoothing = 1;
};

struct ScenarioConfig {
  EpidemicParams params;
  ControlConstraints constraints;
  SirState initial;
  double horizon = 600.0;
  double ode_step = 0.01;
  double policy_interval = 1.0;
  double stop_below = 1e-8;
  // Empty means noise-free observations.
  std::optional<NoiseConfig> noise;
  EstimationConfig estimation;
  std::vector<PolicyKind> strategies;
  // Rate of the constant strategy; defaults to u_min.
  std::optional<double> constant_rate;

  IntegrationOptions integration() const;
};

void validate(const ScenarioConfig& config);

// JSON config file. Every section is required except "noise" (absent or
// null means noise-free) and "constant_rate".
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::filesystem::path& path);
std::string dump_config(const ScenarioConfig& config);

struct StrategyOutcome {
  PolicyKind kind = PolicyKind::kOptimal;
  SimulationRecord record;
  CostReport cost;
  double max_infected = 0.0;
  // max I <= i_bar + 1e-6.
  bool feasible = false;
  // max I <= 1.02 i_bar, the allowance for daily control holds.
  bool nearly_feasible = false;
  std::vector<ObservationLogEntry> observations;
};

// Robust-vs-optimal checks. Each comparison runs over the span both
// records share.
struct DominanceChecks {
  bool control_dominates = false;     // u_hat(t) >= u*(t) - 1e-9 at every query
  double min_control_margin = 0.0;    // min over queries of u_hat - u*
  bool earlier_entry = false;         // t_b_hat <= t_b*
  bool later_exit = false;            // t_h_hat >= t_h* (never = +inf)
  bool cost_ordering = false;         // running cost of u_hat >= that of u*
  bool cumulative_ordering = false;   // I+R robust <= I+R optimal up to t_h*
  bool susceptible_dominates = false; // S robust >= S* - 1e-9 up to t_h*

  bool all() const {
    return control_dominates && earlier_entry && later_exit && cost_ordering &&
           cumulative_ordering && susceptible_dominates;
  }
};

struct GapCheck {
  GapWindow window;
  double formula = 0.0;
  double cost_difference = 0.0;
};

struct ComparisonReport {
  ScenarioConfig config;
  NoiseScales noise;
  std::vector<StrategyOutcome> outcomes;
  std::optional<DominanceChecks> dominance;
  std::optional<GapCheck> gap;

  const StrategyOutcome* find(PolicyKind kind) const;
};

inline constexpr double kFeasibilityTolerance = 1e-6;
inline constexpr double kNearFeasibleFactor = 1.02;
inline constexpr double kDominanceTolerance = 1e-9;

// Simulates one strategy under the scenario's wiring. `noise` is the
// per-compartment scale for observed strategies.
StrategyOutcome run_strategy(const ScenarioConfig& config, PolicyKind kind,
                             const NoiseScales& noise);

ComparisonReport run_scenario(const ScenarioConfig& config);

DominanceChecks check_dominance(const SimulationRecord& robust,
                                const SimulationRecord& optimal);

struct Preflight {
  PeakPrediction peak;
  bool strategy1_optimal = false;
  // Susceptible level when I first reaches i_bar under u_min.
  std::optional<double> s_at_outbreak;
  std::optional<double> required_at_outbreak;
  // The required control at the outbreak fits under u_max (or no outbreak).
  bool feasible = false;
};

Preflight preflight(const ScenarioConfig& config);

// Writes <strategy>.csv per strategy (plus <strategy>_estimates.csv for
// observed strategies) and summary.json.
void export_report(const ComparisonReport& report, const std::filesystem::path& out_dir);

std::string summary_json(const ComparisonReport& report);

struct TrajectoryRow {
  double t = 0.0;
  SirState state;
  double u = 0.0;
  PolicyPhase phase = PolicyPhase::kPreOutbreak;
};

// CSV rows are the policy-query samples of the record.
std::vector<TrajectoryRow> trajectory_rows(const SimulationRecord& record);
std::string trajectory_csv(const SimulationRecord& record);
std::vector<TrajectoryRow> read_trajectory_csv(const std::filesystem::path& path);

}  // namespace sirtest

#endif  // SIRTEST_SCENARIO_HPP
