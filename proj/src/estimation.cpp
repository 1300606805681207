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

#include "sirtest/estimation.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <limits>

#include "sirtest/errors.hpp"

namespace sirtest {

namespace {

double clip01(double v) { return std::clamp(v, 0.0, 1.0); }

struct Fit {
  double slope = 0.0;
  double half_width = 0.0;
};

// Regression through the origin y = b x with a two-sided 95% interval.
Fit fit_through_origin(std::span<const double> x, std::span<const double> y) {
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxx += x[k] * x[k];
    sxy += x[k] * y[k];
  }
  if (!(sxx > 0.0)) throw DegenerateDataError("no infection signal in the regression window");
  Fit fit;
  fit.slope = sxy / sxx;
  double rss = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double e = y[k] - fit.slope * x[k];
    rss += e * e;
  }
  const double dof = static_cast<double>(x.size()) - 1.0;
  const double se = std::sqrt(rss / dof / sxx);
  const boost::math::students_t dist(dof);
  fit.half_width = boost::math::quantile(boost::math::complement(dist, 0.025)) * se;
  return fit;
}

void truncate_at_zero(double& hat, Interval& interval) {
  interval.lo = std::max(0.0, interval.lo);
  interval.hi = std::max(0.0, interval.hi);
  hat = std::clamp(hat, interval.lo, interval.hi);
}

Interval state_interval(double obs, double inflation) {
  const double margin = inflation * obs + kStateNoiseFloor;
  return {clip01(obs - margin), clip01(obs + margin)};
}

}  // namespace

NoiseScales noise_scales(std::span<const SirState> truth, double snr_db) {
  if (std::isnan(snr_db)) throw ConfigError("snr_db must not be NaN");
  if (truth.empty()) throw ConfigError("noise reference sequence is empty");
  if (std::isinf(snr_db) && snr_db > 0) return {};
  double ps = 0.0, pi = 0.0, pr = 0.0;
  for (const auto& x : truth) {
    ps += x.s * x.s;
    pi += x.i * x.i;
    pr += x.r * x.r;
  }
  const double n = static_cast<double>(truth.size());
  const double ratio = std::pow(10.0, snr_db / 10.0);
  return {std::sqrt(ps / n / ratio), std::sqrt(pi / n / ratio),
          std::sqrt(pr / n / ratio)};
}

ObservationNoise::ObservationNoise(const NoiseScales& scales, std::uint64_t seed)
    : scales_(scales), rng_(seed) {}

NoisyObservation ObservationNoise::observe(double t, const SirState& truth) {
  const double zs = normal_(rng_);
  const double zi = normal_(rng_);
  const double zr = normal_(rng_);
  return {t, clip01(truth.s + scales_.s * zs), clip01(truth.i + scales_.i * zi),
          clip01(truth.r + scales_.r * zr)};
}

std::vector<NoisyObservation> add_noise(std::span<const double> times,
                                        std::span<const SirState> truth,
                                        double snr_db, std::uint64_t seed) {
  if (times.size() != truth.size()) throw ConfigError("times and states differ in length");
  ObservationNoise noise(noise_scales(truth, snr_db), seed);
  std::vector<NoisyObservation> out;
  out.reserve(truth.size());
  for (std::size_t k = 0; k < truth.size(); ++k) out.push_back(noise.observe(times[k], truth[k]));
  return out;
}

ParamEstimate exact_estimate(const EpidemicParams& params) {
  ParamEstimate e;
  e.beta_hat = params.beta;
  e.gamma_hat = params.gamma;
  e.beta_interval = {params.beta, params.beta};
  e.gamma_interval = {params.gamma, params.gamma};
  return e;
}

ParamEstimate estimate_params(std::span<const NoisyObservation> obs,
                              std::span<const double> controls, int window) {
  if (window < 2) throw ConfigError("estimation window must be at least 2");
  if (obs.size() < 3) throw DegenerateDataError("need at least two observation intervals");
  if (controls.size() + 1 < obs.size())
    throw ConfigError("a control is needed for every observation interval");
  const std::size_t pairs = std::min<std::size_t>(static_cast<std::size_t>(window), obs.size() - 1);
  const std::size_t first = obs.size() - 1 - pairs;

  std::vector<double> xb, yb, xg, yg;
  xb.reserve(pairs);
  yb.reserve(pairs);
  xg.reserve(pairs);
  yg.reserve(pairs);
  for (std::size_t k = first; k + 1 < obs.size(); ++k) {
    const auto& a = obs[k];
    const auto& b = obs[k + 1];
    const double dt = b.time - a.time;
    if (!(dt > 0.0)) throw ConfigError("observation times must increase");
    xb.push_back(a.s_obs * a.i_obs * dt);
    yb.push_back(a.s_obs - b.s_obs);
    xg.push_back(a.i_obs * dt);
    yg.push_back(b.r_obs - a.r_obs - controls[k] * a.i_obs * dt);
  }
  const Fit fb = fit_through_origin(xb, yb);
  const Fit fg = fit_through_origin(xg, yg);

  ParamEstimate e;
  e.beta_hat = fb.slope;
  e.gamma_hat = fg.slope;
  e.beta_interval = {fb.slope - fb.half_width, fb.slope + fb.half_width};
  e.gamma_interval = {fg.slope - fg.half_width, fg.slope + fg.half_width};
  truncate_at_zero(e.beta_hat, e.beta_interval);
  truncate_at_zero(e.gamma_hat, e.gamma_interval);
  e.window_len = static_cast<int>(pairs);
  return e;
}

EnvelopeSlice envelope_slice(const std::optional<ParamEstimate>& estimate,
                             const SirState& observed, double inflation) {
  if (!(inflation >= 0.0)) throw ConfigError("inflation must be >= 0");
  constexpr double inf = std::numeric_limits<double>::infinity();
  EnvelopeSlice slice;
  if (estimate) {
    slice.beta = {estimate->beta_interval.lo * (1.0 - inflation),
                  estimate->beta_interval.hi * (1.0 + inflation)};
    slice.gamma = {estimate->gamma_interval.lo * (1.0 - inflation),
                   estimate->gamma_interval.hi * (1.0 + inflation)};
    slice.beta.lo = std::max(0.0, slice.beta.lo);
    slice.gamma.lo = std::max(0.0, slice.gamma.lo);
  } else {
    slice.beta = {0.0, inf};
    slice.gamma = {0.0, inf};
  }
  slice.s = state_interval(observed.s, inflation);
  slice.i = state_interval(observed.i, inflation);
  return slice;
}

UncertaintyEnvelope build_envelope(std::span<const ParamEstimate> estimates,
                                   std::span<const NoisyObservation> observations,
                                   double inflation) {
  if (estimates.size() != observations.size())
    throw ConfigError("one estimate per observation day is required");
  UncertaintyEnvelope env;
  env.times.reserve(observations.size());
  env.slices.reserve(observations.size());
  for (std::size_t k = 0; k < observations.size(); ++k) {
    env.times.push_back(observations[k].time);
    env.slices.push_back(envelope_slice(estimates[k], observations[k].as_state(), inflation));
  }
  return env;
}

}  // namespace sirtest
