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

#include "sirtest/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "sirtest/errors.hpp"

namespace sirtest {

namespace {

// Integral over [from, to] of the piecewise-linear interpolant of value(k)
// on the record's sample times.
double trapezoid(const std::vector<double>& times,
                 const std::function<double(std::size_t)>& value, double from,
                 double to) {
  if (times.size() < 2 || !(to > from)) return 0.0;
  from = std::max(from, times.front());
  to = std::min(to, times.back());
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < times.size(); ++k) {
    const double t0 = times[k];
    const double t1 = times[k + 1];
    if (t1 <= from) continue;
    if (t0 >= to) break;
    const double a = std::max(t0, from);
    const double b = std::min(t1, to);
    const double v0 = value(k);
    const double slope = (value(k + 1) - v0) / (t1 - t0);
    const double fa = v0 + slope * (a - t0);
    const double fb = v0 + slope * (b - t0);
    acc += 0.5 * (fa + fb) * (b - a);
  }
  return acc;
}

void require_common_grid(const SimulationRecord& a, const SimulationRecord& b) {
  if (a.empty() || b.empty()) throw GridMismatchError("empty record");
  const std::size_t n = std::min(a.size(), b.size());
  if (a.step != b.step || a.times.front() != b.times.front() ||
      a.times[n - 1] != b.times[n - 1]) {
    throw GridMismatchError("records use different sampling grids; resample first");
  }
}

}  // namespace

PeakPrediction peak_infection(const EpidemicParams& params, double u_floor,
                              double s_a, double i_a) {
  if (!(s_a > 0.0)) throw DomainError("peak_infection needs s_a > 0");
  if (!(params.beta > 0.0)) throw DomainError("peak_infection needs beta > 0");
  if (!(i_a >= 0.0 && i_a <= 1.0 && s_a <= 1.0 && s_a + i_a <= 1.0 + 1e-12))
    throw DomainError("peak_infection needs a valid initial state");
  PeakPrediction p;
  p.rho = (params.gamma + u_floor) / params.beta;
  if (s_a <= p.rho) {
    p.i_peak = i_a;
    p.s_at_peak = s_a;
    p.future_peak = false;
    return p;
  }
  p.i_peak = p.rho * (std::log(p.rho) - 1.0 - std::log(s_a)) + s_a + i_a;
  p.s_at_peak = p.rho;
  p.future_peak = true;
  return p;
}

bool check_strategy1_optimal(const EpidemicParams& params,
                             const ControlConstraints& constraints, double s_0,
                             double i_0) {
  return peak_infection(params, constraints.u_min, s_0, i_0).i_peak <=
         constraints.i_bar;
}

double required_control(const EpidemicParams& params, double s) {
  return params.beta * s - params.gamma;
}

std::optional<double> outbreak_susceptible(const EpidemicParams& params,
                                           double u_floor, double s_0,
                                           double i_0, double i_bar) {
  if (i_0 >= i_bar) return s_0;
  const PeakPrediction peak = peak_infection(params, u_floor, s_0, i_0);
  if (!peak.future_peak || peak.i_peak < i_bar) return std::nullopt;
  // Along the orbit I(S) = rho ln S - S - rho ln s_0 + s_0 + i_0, which rises
  // monotonically as S falls from s_0 to rho.
  const double rho = peak.rho;
  auto orbit = [&](double s) {
    return rho * std::log(s) - s - rho * std::log(s_0) + s_0 + i_0;
  };
  double lo = rho;   // orbit(lo) >= i_bar
  double hi = s_0;   // orbit(hi) <  i_bar
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (orbit(mid) >= i_bar)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

CostReport total_cost(const SimulationRecord& record) {
  if (record.empty()) throw DomainError("total_cost of an empty record");
  auto u = [&](std::size_t k) { return record.controls[k]; };
  CostReport report;
  const double start = record.start();
  const double end = record.end();
  const double t_b = std::clamp(record.t_b.value_or(end), start, end);
  const double t_h = std::clamp(record.t_h.value_or(end), t_b, end);
  report.per_phase[0] = trapezoid(record.times, u, start, t_b);
  report.per_phase[1] = trapezoid(record.times, u, t_b, t_h);
  report.per_phase[2] = trapezoid(record.times, u, t_h, end);
  report.total_cost = trapezoid(record.times, u, start, end);
  return report;
}

double cost_between(const SimulationRecord& record, double from, double to) {
  return trapezoid(record.times, [&](std::size_t k) { return record.controls[k]; },
                   from, to);
}

GapWindow gap_window(const SimulationRecord& hat, const SimulationRecord& star) {
  require_common_grid(hat, star);
  if (!hat.t_b) throw DomainError("record never entered suppression");
  const double common_end = std::min(hat.end(), star.end());
  GapWindow w{*hat.t_b, hat.t_h.value_or(common_end)};
  if (w.to > common_end) {
    std::ostringstream msg;
    msg << "herd-immunity time " << w.to << " beyond the shared span (ends "
        << common_end << ")";
    throw RangeError(msg.str());
  }
  return w;
}

double gap_formula(const SimulationRecord& hat, const SimulationRecord& star,
                   const EpidemicParams& params) {
  const GapWindow w = gap_window(hat, star);
  const std::size_t n = std::min(hat.size(), star.size());
  const std::vector<double> grid(hat.times.begin(), hat.times.begin() + n);
  const double integral = trapezoid(
      grid, [&](std::size_t k) { return hat.states[k].s - star.states[k].s; },
      w.from, w.to);
  const double i_hat = state_at(hat, w.to).i;
  const double i_star = state_at(star, w.to).i;
  if (!(i_hat > 0.0) || !(i_star > 0.0))
    throw DomainError("infection must be positive at the end of the gap window");
  return params.beta * integral - std::log(i_hat) + std::log(i_star);
}

double cumulative_infected(const SimulationRecord& record, double t) {
  const SirState x = state_at(record, t);
  return x.i + x.r;
}

}  // namespace sirtest
