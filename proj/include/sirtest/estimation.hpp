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

#ifndef SIRTEST_ESTIMATION_HPP
#define SIRTEST_ESTIMATION_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "sirtest/policy.hpp"
#include "sirtest/sir_dynamics.hpp"

namespace sirtest {

struct NoisyObservation {
  double time = 0.0;
  double s_obs = 0.0;
  double i_obs = 0.0;
  double r_obs = 0.0;

  SirState as_state() const { return {s_obs, i_obs, r_obs}; }
};

// Per-compartment standard deviation of the additive observation noise.
struct NoiseScales {
  double s = 0.0;
  double i = 0.0;
  double r = 0.0;
};

// sigma_c^2 = mean(x_c^2) / 10^(snr_db / 10) for each compartment c.
// snr_db = +inf yields zero noise.
NoiseScales noise_scales(std::span<const SirState> truth, double snr_db);

// Seeded Gaussian observation stream. Each observation draws three standard
// normals in (S, I, R) order and clips the result to [0, 1].
class ObservationNoise {
 public:
  ObservationNoise(const NoiseScales& scales, std::uint64_t seed);

  NoisyObservation observe(double t, const SirState& truth);
  const NoiseScales& scales() const { return scales_; }

 private:
  NoiseScales scales_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

// Batch form: scales from the whole sequence, then one ObservationNoise pass.
std::vector<NoisyObservation> add_noise(std::span<const double> times,
                                        std::span<const SirState> truth,
                                        double snr_db, std::uint64_t seed);

struct ParamEstimate {
  double beta_hat = 0.0;
  double gamma_hat = 0.0;
  Interval beta_interval;
  Interval gamma_interval;
  int window_len = 0;
};

// Zero-width estimate at the given values.
ParamEstimate exact_estimate(const EpidemicParams& params);

// Least squares on the Euler-discretised dynamics over the trailing `window`
// intervals:
//   S_k - S_{k+1}             = beta  * S_k I_k dt
//   R_{k+1} - R_k - u_k I_k dt = gamma * I_k dt
// with 95% Student-t intervals from the residual variance, truncated at 0.
// controls[k] is the (average) testing rate over [t_k, t_{k+1}).
ParamEstimate estimate_params(std::span<const NoisyObservation> observations,
                              std::span<const double> controls, int window);

struct UncertaintyEnvelope {
  std::vector<double> times;
  std::vector<EnvelopeSlice> slices;
};

inline constexpr double kStateNoiseFloor = 1e-6;

// Parameter intervals widened to [lo (1 - inflation), hi (1 + inflation)];
// state intervals obs -/+ (inflation * obs + 1e-6), clipped to [0, 1]. A
// missing estimate leaves the parameter ranges unbounded.
EnvelopeSlice envelope_slice(const std::optional<ParamEstimate>& estimate,
                             const SirState& observed, double inflation);

UncertaintyEnvelope build_envelope(std::span<const ParamEstimate> estimates,
                                   std::span<const NoisyObservation> observations,
                                   double inflation);

}  // namespace sirtest

#endif  // SIRTEST_ESTIMATION_HPP
