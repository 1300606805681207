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

#ifndef SIRTEST_POLICY_HPP
#define SIRTEST_POLICY_HPP

#include <memory>
#include <optional>
#include <string_view>

#include "sirtest/sir_dynamics.hpp"

namespace sirtest {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double v) const { return v >= lo && v <= hi; }
  double width() const { return hi - lo; }
};

// Uncertainty ranges valid at one policy query.
struct EnvelopeSlice {
  Interval beta;
  Interval gamma;
  Interval s;
  Interval i;
};

// What a policy sees at a query. Which of params/envelope is consulted
// depends on the policy kind.
struct PolicyInput {
  double time = 0.0;
  SirState observed_state;
  std::optional<EnvelopeSlice> envelope;
  std::optional<EpidemicParams> params;
};

enum class PolicyKind { kConstant, kOptimal, kNaive, kRobust };

std::string_view policy_kind_name(PolicyKind kind);
std::optional<PolicyKind> parse_policy_kind(std::string_view name);

class Policy {
 public:
  explicit Policy(const ControlConstraints& constraints);
  virtual ~Policy() = default;

  Policy(const Policy&) = delete;
  Policy& operator=(const Policy&) = delete;

  virtual PolicyKind kind() const = 0;
  // Advances the phase machine and yields the testing rate for this query.
  virtual ControlDecision decide(const PolicyInput& input) = 0;
  // Distance to the next phase switch for `input`; >= 0 means it fires.
  virtual std::optional<double> switch_margin(const PolicyInput& input) const = 0;
  // Empty for the constant policy.
  virtual std::optional<PolicyPhase> phase() const = 0;

  const ControlConstraints& constraints() const { return constraints_; }

 private:
  ControlConstraints constraints_;
};

using PolicyHandle = std::unique_ptr<Policy>;

// Fixed testing rate; must lie within the bounds.
PolicyHandle constant_policy(double u_const, const ControlConstraints& constraints);

// Three-stage optimal policy on true parameters and true states: u_min until
// I reaches i_bar, then beta*S - gamma (clamped) until beta*S <= gamma + u_min,
// then u_min for good.
PolicyHandle optimal_policy(const EpidemicParams& true_params,
                            const ControlConstraints& constraints);

// Same stage logic driven by point estimates in PolicyInput::params and the
// observed state.
PolicyHandle naive_policy(const ControlConstraints& constraints);

// Worst-case corner of PolicyInput::envelope: enters suppression when the
// upper infection bound reaches i_bar, applies beta_max*S_max - gamma_min,
// and leaves once beta_max*S_max <= gamma_min + u_min.
PolicyHandle robust_policy(const ControlConstraints& constraints);

}  // namespace sirtest

#endif  // SIRTEST_POLICY_HPP
