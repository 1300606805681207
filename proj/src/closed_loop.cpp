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

#include "sirtest/closed_loop.hpp"

#include <algorithm>
#include <cmath>

#include "sirtest/errors.hpp"

namespace sirtest {

PolicyInput TruthFeedback::input(double t, const SirState& x) const {
  PolicyInput in;
  in.time = t;
  in.observed_state = x;
  in.params = truth_;
  in.envelope = envelope_slice(exact_estimate(truth_), x, 0.0);
  return in;
}

ControlDecision TruthFeedback::decide(double t, const SirState& truth) {
  return policy_.decide(input(t, truth));
}

std::optional<double> TruthFeedback::switch_margin(double t, const SirState& truth) const {
  return policy_.switch_margin(input(t, truth));
}

ObservedFeedback::ObservedFeedback(Policy& policy, const ObserverSettings& settings)
    : policy_(policy),
      settings_(settings),
      noise_(settings.noise, settings.seed),
      period_(std::max(settings.policy_interval, 1.0)) {
  validate(settings_.truth);
  if (!(settings_.inflation >= 0.0)) throw ConfigError("inflation must be >= 0");
  if (settings_.smoothing < 1) throw ConfigError("smoothing window must be >= 1");
  if (settings_.delay < 0) throw ConfigError("delay must be >= 0");
  if (!(settings_.policy_interval > 0.0)) throw ConfigError("policy_interval must be positive");
  window_samples_ = static_cast<int>(std::lround(settings_.window_days / period_));
  if (settings_.method == EstimationMethod::kRegression && window_samples_ < 2)
    throw ConfigError("estimation window must cover at least two periods");
  if (settings_.method == EstimationMethod::kOracle) estimate_ = exact_estimate(settings_.truth);
}

bool ObservedFeedback::deterministic() const {
  const auto& n = settings_.noise;
  return n.s == 0.0 && n.i == 0.0 && n.r == 0.0 &&
         settings_.method == EstimationMethod::kOracle && settings_.delay == 0 &&
         settings_.smoothing == 1;
}

void ObservedFeedback::refresh_estimate(double t, const NoisyObservation& obs) {
  if (t + 1e-9 < next_sample_time_) return;
  if (!samples_.empty()) {
    const double span = t - samples_.back().time;
    sample_controls_.push_back(span > 0 ? control_integral_ / span : last_control_);
  }
  control_integral_ = 0.0;
  samples_.push_back(obs);
  next_sample_time_ += period_;
  if (settings_.method != EstimationMethod::kRegression) return;
  if (samples_.size() < 3) return;
  try {
    estimate_ = estimate_params(samples_, sample_controls_, window_samples_);
  } catch (const DegenerateDataError&) {
    // Keep the previous estimate.
  }
}

ControlDecision ObservedFeedback::decide(double t, const SirState& truth) {
  control_integral_ += last_control_ * (t - last_time_);
  last_time_ = t;

  const NoisyObservation obs = noise_.observe(t, truth);
  refresh_estimate(t, obs);

  recent_.push_back(obs.as_state());
  while (recent_.size() > static_cast<std::size_t>(settings_.smoothing)) recent_.pop_front();
  SirState fed{0.0, 0.0, 0.0};
  for (const auto& x : recent_) {
    fed.s += x.s;
    fed.i += x.i;
    fed.r += x.r;
  }
  const double n = static_cast<double>(recent_.size());
  fed = {fed.s / n, fed.i / n, fed.r / n};

  PolicyInput in;
  in.time = t;
  in.observed_state = fed;
  in.envelope = envelope_slice(estimate_, fed, settings_.inflation);
  if (estimate_) in.params = EpidemicParams{estimate_->beta_hat, estimate_->gamma_hat};

  pending_.push_back(in);
  const PolicyInput seen = pending_.front();
  if (pending_.size() > static_cast<std::size_t>(settings_.delay)) pending_.pop_front();

  const ControlDecision decision = policy_.decide(seen);
  last_control_ = decision.u;
  log_.push_back({t, truth, obs, estimate_, *seen.envelope, decision.u});
  return decision;
}

std::optional<double> ObservedFeedback::switch_margin(double t, const SirState& truth) const {
  if (!deterministic()) return std::nullopt;
  PolicyInput in;
  in.time = t;
  in.observed_state = truth;
  in.envelope = envelope_slice(estimate_, truth, settings_.inflation);
  in.params = EpidemicParams{estimate_->beta_hat, estimate_->gamma_hat};
  return policy_.switch_margin(in);
}

}  // namespace sirtest
