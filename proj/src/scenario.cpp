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

#include "sirtest/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include "sirtest/errors.hpp"

namespace sirtest {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ObserverSettings observer_settings(const ScenarioConfig& c, const NoiseScales& noise) {
  ObserverSettings s;
  s.truth = c.params;
  s.noise = noise;
  s.seed = c.noise ? c.noise->seed : 0;
  s.method = c.estimation.method;
  s.window_days = c.estimation.window;
  s.inflation = c.estimation.inflation;
  s.smoothing = c.estimation.smoothing;
  s.policy_interval = c.policy_interval;
  return s;
}

StrategyOutcome summarize(PolicyKind kind, SimulationRecord record,
                          const ControlConstraints& constraints) {
  StrategyOutcome out;
  out.kind = kind;
  out.record = std::move(record);
  out.cost = total_cost(out.record);
  out.max_infected = out.record.max_infected();
  out.feasible = out.max_infected <= constraints.i_bar + kFeasibilityTolerance;
  out.nearly_feasible = out.max_infected <= kNearFeasibleFactor * constraints.i_bar;
  return out;
}

std::vector<SirState> query_states(const SimulationRecord& r) {
  std::vector<SirState> out;
  for (auto k : r.query_indices()) out.push_back(r.states[k]);
  return out;
}

}  // namespace

const StrategyOutcome* ComparisonReport::find(PolicyKind kind) const {
  for (const auto& o : outcomes)
    if (o.kind == kind) return &o;
  return nullptr;
}

StrategyOutcome run_strategy(const ScenarioConfig& c, PolicyKind kind,
                             const NoiseScales& noise) {
  const IntegrationOptions options = c.integration();
  switch (kind) {
    case PolicyKind::kConstant: {
      auto policy = constant_policy(c.constant_rate.value_or(c.constraints.u_min), c.constraints);
      TruthFeedback law(*policy, c.params);
      return summarize(kind, integrate(c.initial, c.params, law, options), c.constraints);
    }
    case PolicyKind::kOptimal: {
      auto policy = optimal_policy(c.params, c.constraints);
      TruthFeedback law(*policy, c.params);
      return summarize(kind, integrate(c.initial, c.params, law, options), c.constraints);
    }
    case PolicyKind::kNaive:
    case PolicyKind::kRobust: {
      auto policy = kind == PolicyKind::kNaive ? naive_policy(c.constraints)
                                               : robust_policy(c.constraints);
      ObservedFeedback law(*policy, observer_settings(c, noise));
      StrategyOutcome out =
          summarize(kind, integrate(c.initial, c.params, law, options), c.constraints);
      out.observations = law.log();
      return out;
    }
  }
  throw Error("unknown strategy");
}

DominanceChecks check_dominance(const SimulationRecord& hat, const SimulationRecord& star) {
  if (hat.empty() || star.empty() || hat.step != star.step ||
      hat.policy_interval != star.policy_interval)
    throw GridMismatchError("records use different sampling grids");
  const std::size_t n = std::min(hat.size(), star.size());
  DominanceChecks d;

  d.min_control_margin = kInf;
  for (auto k : hat.query_indices()) {
    if (k >= n) break;
    d.min_control_margin = std::min(d.min_control_margin, hat.controls[k] - star.controls[k]);
  }
  d.control_dominates = d.min_control_margin >= -kDominanceTolerance;

  const double tb_hat = hat.t_b.value_or(kInf);
  const double tb_star = star.t_b.value_or(kInf);
  const double th_hat = hat.t_h.value_or(kInf);
  const double th_star = star.t_h.value_or(kInf);
  d.earlier_entry = tb_hat <= tb_star;
  d.later_exit = th_hat >= th_star;

  d.cost_ordering = true;
  double c_hat = 0.0, c_star = 0.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double dt = hat.times[k + 1] - hat.times[k];
    c_hat += 0.5 * (hat.controls[k] + hat.controls[k + 1]) * dt;
    c_star += 0.5 * (star.controls[k] + star.controls[k + 1]) * dt;
    if (c_hat < c_star - kDominanceTolerance) d.cost_ordering = false;
  }

  d.cumulative_ordering = true;
  d.susceptible_dominates = true;
  for (std::size_t k = 0; k < n && hat.times[k] <= th_star; ++k) {
    const auto& a = hat.states[k];
    const auto& b = star.states[k];
    if (a.i + a.r > b.i + b.r + kDominanceTolerance) d.cumulative_ordering = false;
    if (a.s < b.s - kDominanceTolerance) d.susceptible_dominates = false;
  }
  return d;
}

ComparisonReport run_scenario(const ScenarioConfig& config) {
  validate(config);
  ComparisonReport report;
  report.config = config;

  // Noise is scaled against the optimal closed loop on true data, which every
  // strategy then shares along with the seed.
  std::optional<StrategyOutcome> reference;
  if (config.noise) {
    reference = run_strategy(config, PolicyKind::kOptimal, {});
    report.noise = noise_scales(query_states(reference->record), config.noise->snr_db);
  }

  std::vector<std::future<StrategyOutcome>> jobs;
  for (auto kind : config.strategies) {
    if (kind == PolicyKind::kOptimal && reference) {
      jobs.push_back(std::async(std::launch::deferred, [&reference] { return *reference; }));
      continue;
    }
    jobs.push_back(std::async(std::launch::async, [&config, kind, &report] {
      return run_strategy(config, kind, report.noise);
    }));
  }
  for (auto& job : jobs) report.outcomes.push_back(job.get());

  const StrategyOutcome* optimal = report.find(PolicyKind::kOptimal);
  if (optimal) {
    const double end = optimal->record.end();
    for (auto& o : report.outcomes) {
      if (o.kind == PolicyKind::kOptimal) continue;
      const double common = std::min(end, o.record.end());
      o.cost.gap_vs_optimal =
          cost_between(o.record, 0.0, common) - cost_between(optimal->record, 0.0, common);
    }
  }
  const StrategyOutcome* robust = report.find(PolicyKind::kRobust);
  if (optimal && robust) {
    report.dominance = check_dominance(robust->record, optimal->record);
    try {
      GapCheck g;
      g.window = gap_window(robust->record, optimal->record);
      g.formula = gap_formula(robust->record, optimal->record, config.params);
      g.cost_difference = cost_between(robust->record, g.window.from, g.window.to) -
                          cost_between(optimal->record, g.window.from, g.window.to);
      report.gap = g;
    } catch (const DomainError&) {
    } catch (const RangeError&) {
    }
  }
  return report;
}

Preflight preflight(const ScenarioConfig& c) {
  validate(c);
  Preflight p;
  p.peak = peak_infection(c.params, c.constraints.u_min, c.initial.s, c.initial.i);
  p.strategy1_optimal = p.peak.i_peak <= c.constraints.i_bar;
  if (!p.strategy1_optimal) {
    p.s_at_outbreak = outbreak_susceptible(c.params, c.constraints.u_min, c.initial.s,
                                           c.initial.i, c.constraints.i_bar);
  }
  if (p.s_at_outbreak) p.required_at_outbreak = required_control(c.params, *p.s_at_outbreak);
  p.feasible = !p.required_at_outbreak || *p.required_at_outbreak <= c.constraints.u_max;
  return p;
}

}  // namespace sirtest
