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

#ifndef SIRTEST_CLOSED_LOOP_HPP
#define SIRTEST_CLOSED_LOOP_HPP

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "sirtest/estimation.hpp"
#include "sirtest/policy.hpp"
#include "sirtest/sir_dynamics.hpp"

namespace sirtest {

// Feeds the true state and true parameters straight to the policy.
class TruthFeedback final : public ControlLaw {
 public:
  TruthFeedback(Policy& policy, const EpidemicParams& truth)
      : policy_(policy), truth_(truth) {}

  ControlDecision decide(double t, const SirState& truth) override;
  std::optional<double> switch_margin(double t, const SirState& truth) const override;
  const ControlConstraints& constraints() const override { return policy_.constraints(); }

 private:
  PolicyInput input(double t, const SirState& x) const;

  Policy& policy_;
  EpidemicParams truth_;
};

enum class EstimationMethod { kOracle, kRegression };

struct ObserverSettings {
  EpidemicParams truth;
  // Zero scales mean noise-free observations.
  NoiseScales noise;
  std::uint64_t seed = 0;
  EstimationMethod method = EstimationMethod::kRegression;
  double window_days = 14.0;
  double inflation = 0.05;
  // Number of latest observations averaged into the state the policy sees.
  int smoothing = 1;
  // Queries by which everything the policy sees lags the truth.
  int delay = 0;
  double policy_interval = 1.0;
};

struct ObservationLogEntry {
  double time = 0.0;
  SirState truth;
  NoisyObservation observation;
  std::optional<ParamEstimate> estimate;
  EnvelopeSlice envelope;
  double control = 0.0;
};

// Observe (with noise) -> estimate -> build the envelope -> query the policy.
// Parameter estimates are refreshed once per estimation period
// (max(policy_interval, 1 day)) from observations sampled at that period and
// the time-averaged control over each period.
class ObservedFeedback final : public ControlLaw {
 public:
  ObservedFeedback(Policy& policy, const ObserverSettings& settings);

  ControlDecision decide(double t, const SirState& truth) override;
  std::optional<double> switch_margin(double t, const SirState& truth) const override;
  const ControlConstraints& constraints() const override { return policy_.constraints(); }

  const std::vector<ObservationLogEntry>& log() const { return log_; }

 private:
  bool deterministic() const;
  void refresh_estimate(double t, const NoisyObservation& obs);

  Policy& policy_;
  ObserverSettings settings_;
  ObservationNoise noise_;
  double period_;
  int window_samples_;

  std::vector<NoisyObservation> samples_;
  std::vector<double> sample_controls_;
  double next_sample_time_ = 0.0;
  double control_integral_ = 0.0;
  double last_time_ = 0.0;
  double last_control_ = 0.0;
  std::optional<ParamEstimate> estimate_;

  std::deque<SirState> recent_;
  std::deque<PolicyInput> pending_;
  std::vector<ObservationLogEntry> log_;
};

}  // namespace sirtest

#endif  // SIRTEST_CLOSED_LOOP_HPP
