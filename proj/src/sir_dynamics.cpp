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

#include "sirtest/sir_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sirtest/errors.hpp"

namespace sirtest {

namespace {

constexpr double kClipTolerance = 1e-12;
constexpr double kConservationTolerance = 1e-9;
constexpr int kBisectionIterations = 64;
constexpr int kMaxSwitchesPerStep = 8;

// Snap tiny excursions outside [0, 1] back; anything larger means the step is
// too coarse for the dynamics.
double clip_component(double value, double t, double h, const char* name) {
  if (value >= 0.0 && value <= 1.0) return value;
  if (value < 0.0 && value >= -kClipTolerance) return 0.0;
  if (value > 1.0 && value <= 1.0 + kClipTolerance) return 1.0;
  std::ostringstream msg;
  msg << "state " << name << " = " << value << " left [0, 1] at t = " << t
      << " (step " << h << " too large?)";
  throw StateBlowupError(msg.str());
}

SirState checked(const SirState& x, double t, double h) {
  return {clip_component(x.s, t, h, "S"), clip_component(x.i, t, h, "I"),
          clip_component(x.r, t, h, "R")};
}

SirState axpy(const SirState& x, double a, const SirDerivative& d) {
  return {x.s + a * d.ds, x.i + a * d.di, x.r + a * d.dr};
}

std::size_t substeps_per_query(double step, double policy_interval) {
  const double ratio = policy_interval / step;
  const double rounded = std::round(ratio);
  if (rounded < 1.0 || std::abs(rounded - ratio) > 1e-9 * std::max(1.0, ratio)) {
    std::ostringstream msg;
    msg << "policy_interval " << policy_interval
        << " must be a positive multiple of the ODE step " << step;
    throw ConfigError(msg.str());
  }
  return static_cast<std::size_t>(rounded);
}

class Recorder {
 public:
  Recorder(SimulationRecord& record, bool staged)
      : record_(record), staged_(staged) {}

  void apply(double t, const SirState& x, const ControlDecision& decision) {
    const auto& c = record_.constraints;
    if (!(decision.u >= c.u_min && decision.u <= c.u_max)) {
      std::ostringstream msg;
      msg << "policy yielded u = " << decision.u << " outside [" << c.u_min
          << ", " << c.u_max << "] at t = " << t;
      throw Error(msg.str());
    }
    if (decision.infeasible && !record_.infeasible_at) record_.infeasible_at = t;
    control_ = decision.u;
    if (!staged_) return;
    const PolicyPhase next = decision.phase.value_or(phase_);
    if (next < phase_) throw Error("policy phase moved backwards");
    if (next != phase_ || record_.events.empty()) {
      record_.events.push_back({t, x, decision.u, next});
    }
    if (next >= PolicyPhase::kSuppression && !record_.t_b) record_.t_b = t;
    if (next == PolicyPhase::kPostHerdImmunity && !record_.t_h) record_.t_h = t;
    phase_ = next;
  }

  void crossing(double t_prev, const SirState& prev, double t_next,
                const SirState& next) {
    if (record_.threshold_crossing) return;
    const double bar = record_.constraints.i_bar;
    if (prev.i < bar && next.i >= bar) {
      const double frac = (bar - prev.i) / (next.i - prev.i);
      record_.threshold_crossing = t_prev + frac * (t_next - t_prev);
      if (!staged_) {
        record_.t_b = record_.threshold_crossing;
        phase_ = PolicyPhase::kSuppression;
      }
    }
  }

  void sample(double t, const SirState& x) {
    record_.times.push_back(t);
    record_.states.push_back(x);
    record_.controls.push_back(control_);
    record_.phases.push_back(phase_);
  }

  double control() const { return control_; }

 private:
  SimulationRecord& record_;
  bool staged_;
  PolicyPhase phase_ = PolicyPhase::kPreOutbreak;
  double control_ = 0.0;
};

}  // namespace

double ControlConstraints::clamp(double u) const {
  return std::clamp(u, u_min, u_max);
}

std::string_view phase_name(PolicyPhase phase) {
  switch (phase) {
    case PolicyPhase::kPreOutbreak:
      return "pre_outbreak";
    case PolicyPhase::kSuppression:
      return "suppression";
    case PolicyPhase::kPostHerdImmunity:
      return "post_herd_immunity";
  }
  return "unknown";
}

std::optional<PolicyPhase> parse_phase(std::string_view name) {
  for (auto p : {PolicyPhase::kPreOutbreak, PolicyPhase::kSuppression,
                 PolicyPhase::kPostHerdImmunity}) {
    if (phase_name(p) == name) return p;
  }
  return std::nullopt;
}

void validate(const EpidemicParams& params) {
  if (!(params.beta > 0.0) || !std::isfinite(params.beta))
    throw ConfigError("beta must be positive and finite");
  if (!(params.gamma > 0.0) || !std::isfinite(params.gamma))
    throw ConfigError("gamma must be positive and finite");
}

void validate(const SirState& state) {
  for (double v : {state.s, state.i, state.r}) {
    if (!(v >= 0.0 && v <= 1.0))
      throw ConfigError("state fractions must lie in [0, 1]");
  }
  if (std::abs(state.sum() - 1.0) > kConservationTolerance)
    throw ConfigError("state fractions must sum to 1");
}

void validate(const ControlConstraints& c) {
  if (!(c.u_min >= 0.0) || !(c.u_min < c.u_max) || !std::isfinite(c.u_max))
    throw ConfigError("testing bounds must satisfy 0 <= u_min < u_max");
  if (!(c.i_bar > 0.0 && c.i_bar <= 1.0))
    throw ConfigError("infection threshold must lie in (0, 1]");
}

SirDerivative derivative(const SirState& state, const EpidemicParams& params,
                         double u) {
  const double infection = params.beta * state.s * state.i;
  const double removal = (params.gamma + u) * state.i;
  SirDerivative d;
  d.ds = -infection;
  d.di = infection - removal;
  d.dr = -(d.ds + d.di);
  return d;
}

SirState rk4_step(const SirState& x, const EpidemicParams& params, double u,
                  double h) {
  const SirDerivative k1 = derivative(x, params, u);
  const SirDerivative k2 = derivative(axpy(x, h / 2, k1), params, u);
  const SirDerivative k3 = derivative(axpy(x, h / 2, k2), params, u);
  const SirDerivative k4 = derivative(axpy(x, h, k3), params, u);
  const double w = h / 6;
  return {x.s + w * (k1.ds + 2 * k2.ds + 2 * k3.ds + k4.ds),
          x.i + w * (k1.di + 2 * k2.di + 2 * k3.di + k4.di),
          x.r + w * (k1.dr + 2 * k2.dr + 2 * k3.dr + k4.dr)};
}

double SimulationRecord::max_infected() const {
  double peak = 0.0;
  for (const auto& x : states) peak = std::max(peak, x.i);
  return peak;
}

std::vector<std::size_t> SimulationRecord::query_indices() const {
  const std::size_t every =
      step > 0 ? static_cast<std::size_t>(std::round(policy_interval / step)) : 1;
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < times.size(); k += std::max<std::size_t>(every, 1))
    out.push_back(k);
  return out;
}

SimulationRecord integrate(const SirState& initial, const EpidemicParams& params,
                           ControlLaw& law, const IntegrationOptions& options) {
  validate(params);
  validate(initial);
  validate(law.constraints());
  const double h = options.step;
  if (!(h > 0.0) || !std::isfinite(h)) throw ConfigError("ODE step must be positive");
  if (!(options.horizon >= h)) throw ConfigError("horizon must be at least one step");
  if (options.stop_below < 0.0) throw ConfigError("stop_below must be >= 0");
  const std::size_t every = substeps_per_query(h, options.policy_interval);
  const bool continuous = every == 1;
  const auto total_steps =
      static_cast<std::size_t>(std::floor(options.horizon / h + 1e-9));

  SimulationRecord record;
  record.step = h;
  record.policy_interval = options.policy_interval;
  record.constraints = law.constraints();
  record.times.reserve(total_steps + 1);
  record.states.reserve(total_steps + 1);
  record.controls.reserve(total_steps + 1);
  record.phases.reserve(total_steps + 1);

  SirState x = initial;
  ControlDecision first = law.decide(0.0, x);
  const bool staged = first.phase.has_value();
  Recorder rec(record, staged);
  rec.apply(0.0, x, first);

  for (std::size_t k = 0;; ++k) {
    const double t = static_cast<double>(k) * h;
    if (k > 0 && k % every == 0) rec.apply(t, x, law.decide(t, x));
    rec.sample(t, x);
    if (k == total_steps) break;
    if (options.stop_below > 0.0 && x.i < options.stop_below &&
        derivative(x, params, rec.control()).di < 0.0)
      break;

    const SirState start = x;
    const double t_next = static_cast<double>(k + 1) * h;
    double tc = t;
    double remaining = t_next - t;
    SirState xc = x;
    for (int sw = 0;; ++sw) {
      const SirState x1 = rk4_step(xc, params, rec.control(), remaining);
      std::optional<double> m0, m1;
      if (continuous && sw < kMaxSwitchesPerStep) {
        m0 = law.switch_margin(tc, xc);
        if (m0 && *m0 < 0.0) m1 = law.switch_margin(tc + remaining, x1);
      }
      if (!m0 || !m1 || *m0 >= 0.0 || *m1 < 0.0) {
        xc = checked(x1, t_next, h);
        break;
      }
      // The switch fires inside this step: bisect for the first instant the
      // margin becomes nonnegative and requery the law there.
      double lo = 0.0, hi = remaining;
      for (int it = 0; it < kBisectionIterations && hi - lo > 1e-15 * (1.0 + tc);
           ++it) {
        const double mid = 0.5 * (lo + hi);
        const auto m = law.switch_margin(tc + mid, rk4_step(xc, params, rec.control(), mid));
        if (m && *m >= 0.0)
          hi = mid;
        else
          lo = mid;
      }
      xc = checked(rk4_step(xc, params, rec.control(), hi), tc + hi, h);
      tc += hi;
      remaining = t_next - tc;
      rec.apply(tc, xc, law.decide(tc, xc));
      if (remaining <= 1e-15 * (1.0 + t_next)) break;
    }
    x = xc;
    rec.crossing(t, start, t_next, x);
  }
  return record;
}

SirState state_at(const SimulationRecord& record, double t) {
  if (record.empty() || t < record.start() || t > record.end()) {
    std::ostringstream msg;
    msg << "time " << t << " outside the record span";
    throw RangeError(msg.str());
  }
  auto it = std::upper_bound(record.times.begin(), record.times.end(), t);
  if (it == record.times.end()) return record.states.back();
  const auto hi = static_cast<std::size_t>(it - record.times.begin());
  const std::size_t lo = hi - 1;
  const double w = (t - record.times[lo]) / (record.times[hi] - record.times[lo]);
  const SirState& a = record.states[lo];
  const SirState& b = record.states[hi];
  return {a.s + w * (b.s - a.s), a.i + w * (b.i - a.i), a.r + w * (b.r - a.r)};
}

}  // namespace sirtest
