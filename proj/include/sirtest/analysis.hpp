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

#ifndef SIRTEST_ANALYSIS_HPP
#define SIRTEST_ANALYSIS_HPP

#include <array>
#include <optional>

#include "sirtest/sir_dynamics.hpp"

namespace sirtest {

struct PeakPrediction {
  // (gamma + u_floor) / beta; the susceptible level at the peak.
  double rho = 0.0;
  double i_peak = 0.0;
  double s_at_peak = 0.0;
  // False when s_a <= rho: the peak is behind us and i_peak is just i_a.
  bool future_peak = false;
};

// Closed-form peak of I under a constant testing rate u_floor, starting from
// (s_a, i_a): rho (ln rho - 1 - ln s_a) + s_a + i_a.
PeakPrediction peak_infection(const EpidemicParams& params, double u_floor,
                              double s_a, double i_a);

// True iff the constant-u_min run never exceeds i_bar, in which case the
// constant policy is already optimal.
bool check_strategy1_optimal(const EpidemicParams& params,
                             const ControlConstraints& constraints, double s_0,
                             double i_0);

// beta * s - gamma: the testing rate that freezes I at its current level.
double required_control(const EpidemicParams& params, double s);

// Susceptible fraction at which the constant-u_floor orbit first reaches
// i_bar, solved on the first-integral curve. Empty if the peak stays below.
std::optional<double> outbreak_susceptible(const EpidemicParams& params,
                                           double u_floor, double s_0,
                                           double i_0, double i_bar);

struct CostReport {
  double total_cost = 0.0;
  // Before t_b, between t_b and t_h, after t_h.
  std::array<double, 3> per_phase{};
  std::optional<double> gap_vs_optimal;
};

// Trapezoidal integral of the control over the record.
CostReport total_cost(const SimulationRecord& record);

// Trapezoidal integral of the control over [from, to] (clipped to the span).
double cost_between(const SimulationRecord& record, double from, double to);

struct GapWindow {
  double from = 0.0;
  double to = 0.0;
};

// [t_b, t_h] of `record_hat`; when it never reaches herd immunity the window
// closes at the end of the span both records share.
GapWindow gap_window(const SimulationRecord& record_hat,
                     const SimulationRecord& record_star);

// Extra testing of `record_hat` over `record_star` predicted from the true
// trajectories: beta * int (S - S*) dt - ln I(t_h) + ln I*(t_h) over the gap
// window. Both records must share the sampling grid.
double gap_formula(const SimulationRecord& record_hat,
                   const SimulationRecord& record_star,
                   const EpidemicParams& params);

// I(t) + R(t), linearly interpolated.
double cumulative_infected(const SimulationRecord& record, double t);

}  // namespace sirtest

#endif  // SIRTEST_ANALYSIS_HPP
