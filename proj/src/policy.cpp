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

#include "sirtest/policy.hpp"

#include <cmath>
#include <limits>

#include "sirtest/errors.hpp"

namespace sirtest {

namespace {

class ConstantPolicy final : public Policy {
 public:
  ConstantPolicy(double u, const ControlConstraints& c) : Policy(c), u_(u) {
    if (!(u >= c.u_min && u <= c.u_max))
      throw ConfigError("constant testing rate outside [u_min, u_max]");
  }

  PolicyKind kind() const override { return PolicyKind::kConstant; }
  ControlDecision decide(const PolicyInput&) override { return {u_, std::nullopt, false}; }
  std::optional<double> switch_margin(const PolicyInput&) const override {
    return std::nullopt;
  }
  std::optional<PolicyPhase> phase() const override { return std::nullopt; }

 private:
  double u_;
};

// Quantities a staged policy reads off its input at one query.
struct StageView {
  double infected;            // compared against i_bar
  double required;            // control that holds dI/dt = 0
  bool parameters_known;
};

// Shared three-stage machine. Subclasses only say how to read the input.
class StagedPolicy : public Policy {
 public:
  using Policy::Policy;

  ControlDecision decide(const PolicyInput& input) override {
    const auto& c = constraints();
    const StageView v = view(input);
    bool infeasible = false;
    if (phase_ == PolicyPhase::kPreOutbreak && v.infected >= c.i_bar) {
      phase_ = PolicyPhase::kSuppression;
      infeasible = v.parameters_known && v.required > c.u_max;
    }
    if (phase_ == PolicyPhase::kSuppression && v.parameters_known &&
        v.required <= c.u_min) {
      phase_ = PolicyPhase::kPostHerdImmunity;
    }
    switch (phase_) {
      case PolicyPhase::kPreOutbreak:
      case PolicyPhase::kPostHerdImmunity:
        last_ = c.u_min;
        break;
      case PolicyPhase::kSuppression:
        // Without parameters the last control is held.
        if (v.parameters_known) last_ = c.clamp(v.required);
        infeasible = infeasible || (v.parameters_known && v.required > c.u_max);
        break;
    }
    return {last_, phase_, infeasible};
  }

  std::optional<double> switch_margin(const PolicyInput& input) const override {
    const StageView v = view(input);
    switch (phase_) {
      case PolicyPhase::kPreOutbreak:
        return v.infected - constraints().i_bar;
      case PolicyPhase::kSuppression:
        if (!v.parameters_known) return std::nullopt;
        return constraints().u_min - v.required;
      case PolicyPhase::kPostHerdImmunity:
        return std::nullopt;
    }
    return std::nullopt;
  }

  std::optional<PolicyPhase> phase() const override { return phase_; }

 protected:
  virtual StageView view(const PolicyInput& input) const = 0;

 private:
  PolicyPhase phase_ = PolicyPhase::kPreOutbreak;
  double last_ = constraints().u_min;
};

class OptimalPolicy final : public StagedPolicy {
 public:
  OptimalPolicy(const EpidemicParams& p, const ControlConstraints& c)
      : StagedPolicy(c), params_(p) {
    validate(p);
  }
  PolicyKind kind() const override { return PolicyKind::kOptimal; }

 protected:
  StageView view(const PolicyInput& in) const override {
    const auto& x = in.observed_state;
    return {x.i, params_.beta * x.s - params_.gamma, true};
  }

 private:
  EpidemicParams params_;
};

class NaivePolicy final : public StagedPolicy {
 public:
  using StagedPolicy::StagedPolicy;
  PolicyKind kind() const override { return PolicyKind::kNaive; }

 protected:
  StageView view(const PolicyInput& in) const override {
    const auto& x = in.observed_state;
    if (!in.params) return {x.i, 0.0, false};
    return {x.i, in.params->beta * x.s - in.params->gamma, true};
  }
};

class RobustPolicy final : public StagedPolicy {
 public:
  using StagedPolicy::StagedPolicy;
  PolicyKind kind() const override { return PolicyKind::kRobust; }

 protected:
  StageView view(const PolicyInput& in) const override {
    if (!in.envelope) throw Error("robust policy queried without an envelope");
    const EnvelopeSlice& e = *in.envelope;
    // An unbounded beta range yields +inf here, which clamps to u_max.
    double required = e.beta.hi * e.s.hi - e.gamma.lo;
    if (std::isnan(required)) required = std::numeric_limits<double>::infinity();
    return {e.i.hi, required, true};
  }
};

}  // namespace

Policy::Policy(const ControlConstraints& constraints) : constraints_(constraints) {
  validate(constraints_);
}

std::string_view policy_kind_name(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kConstant:
      return "constant";
    case PolicyKind::kOptimal:
      return "optimal";
    case PolicyKind::kNaive:
      return "naive";
    case PolicyKind::kRobust:
      return "robust";
  }
  return "unknown";
}

std::optional<PolicyKind> parse_policy_kind(std::string_view name) {
  for (auto k : {PolicyKind::kConstant, PolicyKind::kOptimal, PolicyKind::kNaive,
                 PolicyKind::kRobust}) {
    if (policy_kind_name(k) == name) return k;
  }
  return std::nullopt;
}

PolicyHandle constant_policy(double u_const, const ControlConstraints& constraints) {
  return std::make_unique<ConstantPolicy>(u_const, constraints);
}

PolicyHandle optimal_policy(const EpidemicParams& true_params,
                            const ControlConstraints& constraints) {
  return std::make_unique<OptimalPolicy>(true_params, constraints);
}

PolicyHandle naive_policy(const ControlConstraints& constraints) {
  return std::make_unique<NaivePolicy>(constraints);
}

PolicyHandle robust_policy(const ControlConstraints& constraints) {
  return std::make_unique<RobustPolicy>(constraints);
}

}  // namespace sirtest
