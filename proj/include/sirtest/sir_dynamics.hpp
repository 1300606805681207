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

#ifndef SIRTEST_SIR_DYNAMICS_HPP
#define SIRTEST_SIR_DYNAMICS_HPP

#include <optional>
#include <string_view>
#include <vector>

namespace sirtest {

// Transmission and removal rates, per day. Fixed for a run.
struct EpidemicParams {
  double beta = 0.0;
  double gamma = 0.0;
};

// Population fractions. s + i + r == 1 up to rounding.
struct SirState {
  double s = 1.0;
  double i = 0.0;
  double r = 0.0;

  double sum() const { return s + i + r; }
};

struct SirDerivative {
  double ds = 0.0;
  double di = 0.0;
  double dr = 0.0;
};

// Testing-rate bounds and the infection threshold.
struct ControlConstraints {
  double u_min = 0.0;
  double u_max = 1.0;
  double i_bar = 1.0;

  double clamp(double u) const;
};

enum class PolicyPhase { kPreOutbreak, kSuppression, kPostHerdImmunity };

std::string_view phase_name(PolicyPhase phase);
std::optional<PolicyPhase> parse_phase(std::string_view name);

// Throw ConfigError when the invariants of the type do not hold.
void validate(const EpidemicParams& params);
void validate(const SirState& state);
void validate(const ControlConstraints& constraints);

// Right-hand side of the controlled SIR system. The removal component is the
// negated sum of the other two so the components cancel exactly.
SirDerivative derivative(const SirState& state, const EpidemicParams& params,
                         double u);

// One classical Runge-Kutta step with the testing rate held at `u`.
SirState rk4_step(const SirState& state, const EpidemicParams& params, double u,
                  double h);

struct ControlDecision {
  double u = 0.0;
  // Phase after this decision; empty for policies without stages.
  std::optional<PolicyPhase> phase;
  // The policy needed more than u_max and was clamped.
  bool infeasible = false;
};

// Closed-loop feedback queried by the integrator. Implementations own
// whatever observation/estimation machinery sits between the true state and
// the policy.
class ControlLaw {
 public:
  virtual ~ControlLaw() = default;

  virtual ControlDecision decide(double t, const SirState& truth) = 0;

  // Signed distance to the next phase switch. The switch fires once this
  // becomes >= 0. Must not mutate state. Empty when the switch cannot be
  // located from the true state alone (noisy observations, no phases).
  virtual std::optional<double> switch_margin(double t,
                                              const SirState& truth) const {
    (void)t;
    (void)truth;
    return std::nullopt;
  }

  virtual const ControlConstraints& constraints() const = 0;
};

struct IntegrationOptions {
  double horizon = 600.0;
  double step = 0.01;
  double policy_interval = 1.0;
  // Stop early once I drops below this level while decaying. 0 disables.
  double stop_below = 1e-8;
};

struct PhaseEvent {
  double time = 0.0;
  SirState state;
  double control = 0.0;
  PolicyPhase phase = PolicyPhase::kPreOutbreak;
};

struct SimulationRecord {
  std::vector<double> times;
  std::vector<SirState> states;
  // Control in effect from each sample until the next one.
  std::vector<double> controls;
  std::vector<PolicyPhase> phases;

  // Entry into suppression (or, for stage-less policies, the first true
  // crossing of i_bar) and entry into the post-herd-immunity stage.
  std::optional<double> t_b;
  std::optional<double> t_h;
  // First time the true I reached i_bar, linearly interpolated.
  std::optional<double> threshold_crossing;
  // First time the policy asked for more than u_max.
  std::optional<double> infeasible_at;
  std::vector<PhaseEvent> events;

  double step = 0.0;
  double policy_interval = 0.0;
  ControlConstraints constraints;

  std::size_t size() const { return times.size(); }
  bool empty() const { return times.empty(); }
  double start() const { return times.front(); }
  double end() const { return times.back(); }
  double max_infected() const;
  // Samples at policy-query instants only.
  std::vector<std::size_t> query_indices() const;
};

// Fixed-step RK4 simulation of the closed loop. The law is queried every
// policy_interval and its control held in between. When policy_interval
// equals the step, phase switches are additionally located inside a step by
// bisection on the law's switch margin.
SimulationRecord integrate(const SirState& initial, const EpidemicParams& params,
                           ControlLaw& law, const IntegrationOptions& options);

// Linear interpolation of the state at time t (RangeError outside the span).
SirState state_at(const SimulationRecord& record, double t);

}  // namespace sirtest

#endif  // SIRTEST_SIR_DYNAMICS_HPP
