/*
 * Copyright 2026 The mrsde Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace mrsde {

/// Profile of the per-step mean-reversion rates theta'_i.
enum class ScheduleShape {
  kUniform,          ///< constant theta'_i
  kFlattenedCosine,  ///< cosine-squared profile with a positive floor; reverts faster near t = 0
};

/// Discrete coefficient schedule of the mean-reverting SDE
/// dx = theta_t (mu - x) dt + sigma_t dw with sigma_t^2 = 2 lambda^2 theta_t.
///
/// Stores the per-step integrals theta'_i = int_{i-1}^i theta dt for
/// i = 1..T and their running sums theta_bar_t (theta_bar_0 = 0). Everything
/// else -- the marginal mean coefficient e^{-theta_bar_t}, the marginal
/// variance v_t, the per-step diffusion sigma_t^2 and the posterior variance
/// beta_tilde_t -- is derived from those plus the stationary noise level
/// lambda. The schedule is normalized so that e^{-theta_bar_T} equals the
/// requested terminal decay exactly.
class NoiseSchedule {
 public:
  /// Builds a schedule of `num_steps` steps with stationary noise standard
  /// deviation `lambda` (same intensity units as the images it will be used
  /// with) such that e^{-theta_bar_T} == terminal_decay.
  static NoiseSchedule build(int num_steps, double lambda, double terminal_decay,
                             ScheduleShape shape);

  /// Builds a schedule directly from per-step integrals theta'_i (all > 0),
  /// without terminal normalization. Mainly for custom schedules and
  /// verification against closed forms at arbitrary coefficient values.
  static NoiseSchedule from_step_thetas(const std::vector<double>& step_thetas, double lambda);

  int num_steps() const { return static_cast<int>(step_theta_.size()); }
  double lambda() const { return lambda_; }

  /// theta'_t for t in [1, T].
  double step_theta(int t) const;

  /// theta_bar_t for t in [0, T].
  double cum_theta(int t) const;

  /// e^{-theta_bar_t}: coefficient of (x0 - mu) in the marginal mean.
  double mean_coeff(int t) const;

  /// Marginal variance v_t = lambda^2 (1 - e^{-2 theta_bar_t}).
  double variance(int t) const;

  /// Per-step diffusion integral sigma_t^2 = 2 lambda^2 theta'_t.
  double step_sigma2(int t) const;

  /// Posterior variance
  /// beta_tilde_t = lambda^2 (1 - e^{-2 theta_bar_{t-1}}) (1 - e^{-2 theta'_t})
  ///                / (1 - e^{-2 theta_bar_t}),   t in [1, T].
  double posterior_variance(int t) const;

  /// CSV dump: one header plus rows t = 0..T with columns
  /// t, theta_prime, theta_bar, m_coeff, v_t, beta_tilde_t.
  void dump_csv(std::ostream& os) const;

 private:
  NoiseSchedule() = default;

  void require_step(int t, bool allow_zero) const;

  std::vector<double> step_theta_;  // theta'_i, i = 1..T (0-based storage)
  std::vector<double> cum_theta_;   // theta_bar_t, t = 0..T
  double lambda_ = 0.0;
};

}  // namespace mrsde
