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

#include <cmath>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mrsde/image.hpp"
#include "mrsde/rng.hpp"
#include "mrsde/schedule.hpp"

namespace mrsde {

/// Closed-form mathematics of the mean-reverting SDE
///
///   dx = theta_t (mu - x) dt + sigma_t dw,   sigma_t^2 = 2 lambda^2 theta_t,
///
/// whose marginals given the initial state x0 are Gaussian:
///
///   x_t ~ N(m_t, v_t),   m_t = mu + (x0 - mu) e^{-theta_bar_t},
///                        v_t = lambda^2 (1 - e^{-2 theta_bar_t}).
///
/// The image x0 plays the role of the clean (HQ) signal and mu the degraded
/// (LQ) signal the process reverts to. Per-pixel dynamics are i.i.d., so the
/// variance is a shared scalar while the mean is image-shaped.

template <typename T>
struct MarginalParams {
  Image<T> mean;
  double variance = 0.0;
};

template <typename T>
struct PosteriorParams {
  Image<T> mean;
  double variance = 0.0;
};

namespace detail {

inline void require_step_range(const NoiseSchedule& sched, int t, int lo) {
  if (t < lo || t > sched.num_steps()) {
    throw std::out_of_range("sde: step index out of range");
  }
}

}  // namespace detail

/// Coefficients of the posterior mean
///   mean = a x_t + b x0 + (1 - a - b) mu
/// with a = e^{-theta'_t} (1 - e^{-2 theta_bar_{t-1}}) / (1 - e^{-2 theta_bar_t})
/// and  b = e^{-theta_bar_{t-1}} (1 - e^{-2 theta'_t}) / (1 - e^{-2 theta_bar_t}).
/// At t = 1 this degenerates exactly to (a, b) = (0, 1), i.e. the mean is x0.
struct PosteriorCoeffs {
  double on_state = 0.0;  // a
  double on_x0 = 0.0;     // b
  double on_mu = 0.0;     // 1 - a - b
  double variance = 0.0;  // beta_tilde_t
};

inline PosteriorCoeffs posterior_coeffs(const NoiseSchedule& sched, int t) {
  detail::require_step_range(sched, t, 1);
  const double denom = 1.0 - std::exp(-2.0 * sched.cum_theta(t));
  const double a = std::exp(-sched.step_theta(t)) *
                   (1.0 - std::exp(-2.0 * sched.cum_theta(t - 1))) / denom;
  const double b = sched.mean_coeff(t - 1) *
                   (1.0 - std::exp(-2.0 * sched.step_theta(t))) / denom;
  return PosteriorCoeffs{a, b, 1.0 - a - b, sched.posterior_variance(t)};
}

/// Marginal distribution p_t(x) = N(m_t, v_t) given x0 and mu, for t in [0, T].
template <typename T>
MarginalParams<T> marginal_params(const NoiseSchedule& sched, const Image<T>& x0,
                                  const Image<T>& mu, int t) {
  require_same_shape(x0, mu, "marginal_params");
  detail::require_step_range(sched, t, 0);
  const double decay = sched.mean_coeff(t);
  MarginalParams<T> out;
  out.mean = Image<T>(x0.height(), x0.width(), x0.channels());
  for (std::size_t i = 0; i < x0.size(); ++i) {
    const double m = mu.data()[i] + (static_cast<double>(x0.data()[i]) - mu.data()[i]) * decay;
    out.mean.data()[i] = static_cast<T>(m);
  }
  out.variance = sched.variance(t);
  return out;
}

/// Draws x_t = m_t + sqrt(v_t) eps with eps ~ N(0, I). At t = 0 this is x0.
template <typename T>
Image<T> forward_sample(const NoiseSchedule& sched, const Image<T>& x0, const Image<T>& mu,
                        int t, Rng& rng) {
  MarginalParams<T> marginal = marginal_params(sched, x0, mu, t);
  const double sd = std::sqrt(marginal.variance);
  Image<T> out = std::move(marginal.mean);
  if (sd > 0.0) {
    for (std::size_t i = 0; i < out.size(); ++i) {
      out.data()[i] = static_cast<T>(out.data()[i] + sd * rng.normal());
    }
  }
  return out;
}

/// Exact Gaussian score grad_x log p_t(x) = -(x_t - m_t) / v_t. Requires t >= 1
/// (v_0 = 0 makes the score singular at t = 0).
template <typename T>
Image<T> analytic_score(const NoiseSchedule& sched, const Image<T>& x_t, const Image<T>& x0,
                        const Image<T>& mu, int t) {
  detail::require_step_range(sched, t, 1);
  require_same_shape(x_t, x0, "analytic_score");
  MarginalParams<T> marginal = marginal_params(sched, x0, mu, t);
  Image<T> out(x_t.height(), x_t.width(), x_t.channels());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.data()[i] = static_cast<T>(
        -(static_cast<double>(x_t.data()[i]) - marginal.mean.data()[i]) / marginal.variance);
  }
  return out;
}

/// Euler-Maruyama simulation of the forward SDE on the fine grid
/// dt = 1 / substeps_per_unit, recording states at the integer times 0..T.
/// Validation tool: the recorded states should follow the closed-form
/// marginals up to discretization and Monte Carlo error.
template <typename T>
std::vector<Image<T>> euler_forward_simulate(const NoiseSchedule& sched, const Image<T>& x0,
                                             const Image<T>& mu, int substeps_per_unit,
                                             Rng& rng) {
  require_same_shape(x0, mu, "euler_forward_simulate");
  if (substeps_per_unit < 1) {
    throw std::invalid_argument("euler_forward_simulate: substeps_per_unit must be >= 1");
  }
  const double dt = 1.0 / substeps_per_unit;
  const double lambda2 = sched.lambda() * sched.lambda();

  std::vector<Image<T>> states;
  states.reserve(static_cast<std::size_t>(sched.num_steps()) + 1);
  states.push_back(x0);

  Image<T> x = x0;
  for (int t = 1; t <= sched.num_steps(); ++t) {
    const double theta = sched.step_theta(t);  // theta is piecewise constant per unit step
    const double noise_sd = std::sqrt(2.0 * lambda2 * theta * dt);
    for (int sub = 0; sub < substeps_per_unit; ++sub) {
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double xi = x.data()[i];
        const double drift = theta * (mu.data()[i] - xi) * dt;
        x.data()[i] = static_cast<T>(xi + drift + noise_sd * rng.normal());
      }
    }
    states.push_back(x);
  }
  return states;
}

/// One reverse-time Euler-Maruyama step of
///   dx = [theta_t (mu - x) - sigma_t^2 score] dt + sigma_t dw_hat
/// from t to t-1, integrating against time over a unit step (theta'_t as the
/// per-step integral):
///   x_{t-1} = x_t - [theta'_t (mu - x_t) - sigma_t^2 score] + sigma_t eps.
/// With the exact score this transports the marginal at t to the marginal at
/// t-1 up to discretization error. `noise_free` drops the dw_hat term, the
/// deterministic variant used for final-step rendering.
template <typename T>
Image<T> reverse_sde_step(const NoiseSchedule& sched, const Image<T>& x_t, const Image<T>& mu,
                          const Image<T>& score, int t, Rng& rng, bool noise_free) {
  detail::require_step_range(sched, t, 1);
  require_same_shape(x_t, mu, "reverse_sde_step");
  require_same_shape(x_t, score, "reverse_sde_step");
  const double theta = sched.step_theta(t);
  const double sigma2 = sched.step_sigma2(t);
  const double noise_sd = noise_free ? 0.0 : std::sqrt(sigma2);
  Image<T> out(x_t.height(), x_t.width(), x_t.channels());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double xi = x_t.data()[i];
    const double drift = theta * (mu.data()[i] - xi) - sigma2 * score.data()[i];
    double next = xi - drift;
    if (noise_sd > 0.0) next += noise_sd * rng.normal();
    out.data()[i] = static_cast<T>(next);
  }
  return out;
}

/// Maximum-likelihood reverse state x*_{t-1}: the two-coefficient combination
/// of (x_t - mu) and (x0 - mu) around mu. Identical in form to the posterior
/// mean; both call posterior_coeffs so they agree bit for bit.
template <typename T>
Image<T> optimal_reverse_step(const NoiseSchedule& sched, const Image<T>& x_t,
                              const Image<T>& x0, const Image<T>& mu, int t) {
  require_same_shape(x_t, x0, "optimal_reverse_step");
  require_same_shape(x_t, mu, "optimal_reverse_step");
  const PosteriorCoeffs c = posterior_coeffs(sched, t);
  Image<T> out(x_t.height(), x_t.width(), x_t.channels());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.data()[i] = static_cast<T>(c.on_state * x_t.data()[i] + c.on_x0 * x0.data()[i] +
                                   c.on_mu * mu.data()[i]);
  }
  return out;
}

/// Gaussian posterior p(x_{t-1} | x_t, x0) = N(mu_tilde_t, beta_tilde_t I).
/// The mean shares its implementation with optimal_reverse_step.
template <typename T>
PosteriorParams<T> posterior_params(const NoiseSchedule& sched, const Image<T>& x_t,
                                    const Image<T>& x0, const Image<T>& mu, int t) {
  PosteriorParams<T> out;
  out.mean = optimal_reverse_step(sched, x_t, x0, mu, t);
  out.variance = sched.posterior_variance(t);
  return out;
}

/// Noise predictor interface: maps (x_t, mu, t) to a predicted standard-normal
/// noise field of the same shape. The seam where a trained network would plug
/// in; the implementations below are analytic stand-ins.
template <typename T>
class NoisePredictor {
 public:
  virtual ~NoisePredictor() = default;
  virtual Image<T> predict(const Image<T>& x_t, const Image<T>& mu, int t) = 0;
};

/// Exact predictor: holds x0 and returns eps = (x_t - m_t) / sqrt(v_t).
template <typename T>
class OracleNoisePredictor final : public NoisePredictor<T> {
 public:
  OracleNoisePredictor(const NoiseSchedule& sched, Image<T> x0)
      : sched_(&sched), x0_(std::move(x0)) {}

  Image<T> predict(const Image<T>& x_t, const Image<T>& mu, int t) override {
    detail::require_step_range(*sched_, t, 1);  // v_0 = 0 has no noise to recover
    MarginalParams<T> marginal = marginal_params(*sched_, x0_, mu, t);
    const double sd = std::sqrt(marginal.variance);
    Image<T> out(x_t.height(), x_t.width(), x_t.channels());
    for (std::size_t i = 0; i < out.size(); ++i) {
      out.data()[i] =
          static_cast<T>((static_cast<double>(x_t.data()[i]) - marginal.mean.data()[i]) / sd);
    }
    return out;
  }

 private:
  const NoiseSchedule* sched_;
  Image<T> x0_;
};

/// Oracle plus i.i.d. Gaussian perturbation of configurable strength on every
/// query; models an imperfect trained predictor for robustness tests.
template <typename T>
class PerturbedOraclePredictor final : public NoisePredictor<T> {
 public:
  PerturbedOraclePredictor(const NoiseSchedule& sched, Image<T> x0, double noise_sigma,
                           std::uint64_t seed)
      : oracle_(sched, std::move(x0)), noise_sigma_(noise_sigma), rng_(seed) {}

  Image<T> predict(const Image<T>& x_t, const Image<T>& mu, int t) override {
    Image<T> out = oracle_.predict(x_t, mu, t);
    for (std::size_t i = 0; i < out.size(); ++i) {
      out.data()[i] = static_cast<T>(out.data()[i] + noise_sigma_ * rng_.normal());
    }
    return out;
  }

 private:
  OracleNoisePredictor<T> oracle_;
  double noise_sigma_;
  Rng rng_;
};

/// Inverts the reparameterization x_t = m_t + sqrt(v_t) eps given a predicted
/// eps:  x0_hat = e^{theta_bar_t} (x_t - mu - sqrt(v_t) eps_hat) + mu.
/// `clamp_to_unit` bounds the estimate to [0,1]; the e^{theta_bar_t} factor
/// amplifies predictor error at large t, so image pipelines keep it on.
template <typename T>
Image<T> estimate_x0(const NoiseSchedule& sched, const Image<T>& x_t, const Image<T>& mu, int t,
                     NoisePredictor<T>& predictor, bool clamp_to_unit = true) {
  detail::require_step_range(sched, t, 1);
  require_same_shape(x_t, mu, "estimate_x0");
  const Image<T> eps = predictor.predict(x_t, mu, t);
  require_same_shape(x_t, eps, "estimate_x0: predictor output");
  const double gain = 1.0 / sched.mean_coeff(t);  // e^{theta_bar_t}
  const double sd = std::sqrt(sched.variance(t));
  Image<T> out(x_t.height(), x_t.width(), x_t.channels());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double v = gain * (static_cast<double>(x_t.data()[i]) - mu.data()[i] -
                             sd * eps.data()[i]) +
                     mu.data()[i];
    out.data()[i] = static_cast<T>(v);
  }
  if (clamp_to_unit) out.clamp(T(0), T(1));
  return out;
}

template <typename T>
struct PosteriorSampleOptions {
  /// Starting state x_T; defaults to the noisy LQ image mu + sqrt(v_T) eps.
  std::optional<Image<T>> init_state;
  bool clamp_x0 = true;
  bool keep_trajectory = false;
};

template <typename T>
struct PosteriorSampleResult {
  Image<T> restored;
  /// States x_T, x_{T-1}, ..., x_0 when keep_trajectory is set.
  std::vector<Image<T>> trajectory;
};

/// Ancestral sampling through the closed-form posterior: starting from a noisy
/// LQ state, repeatedly estimate x0 from the predicted noise and draw
/// x_{t-1} ~ N(mu_tilde_t(x_t, x0_hat), beta_tilde_t). The final step is
/// deterministic automatically since beta_tilde_1 = 0.
template <typename T>
PosteriorSampleResult<T> posterior_sample_loop(const NoiseSchedule& sched, const Image<T>& mu,
                                               NoisePredictor<T>& predictor, Rng& rng,
                                               const PosteriorSampleOptions<T>& options = {}) {
  const int num_steps = sched.num_steps();
  Image<T> x;
  if (options.init_state.has_value()) {
    x = *options.init_state;
    require_same_shape(x, mu, "posterior_sample_loop: init_state");
  } else {
    const double sd = std::sqrt(sched.variance(num_steps));
    x = mu;
    for (std::size_t i = 0; i < x.size(); ++i) {
      x.data()[i] = static_cast<T>(x.data()[i] + sd * rng.normal());
    }
  }

  PosteriorSampleResult<T> result;
  if (options.keep_trajectory) result.trajectory.push_back(x);

  for (int t = num_steps; t >= 1; --t) {
    const Image<T> x0_hat = estimate_x0(sched, x, mu, t, predictor, options.clamp_x0);
    PosteriorParams<T> posterior = posterior_params(sched, x, x0_hat, mu, t);
    x = std::move(posterior.mean);
    if (posterior.variance > 0.0) {
      const double sd = std::sqrt(posterior.variance);
      for (std::size_t i = 0; i < x.size(); ++i) {
        x.data()[i] = static_cast<T>(x.data()[i] + sd * rng.normal());
      }
    }
    if (options.keep_trajectory) result.trajectory.push_back(x);
  }
  result.restored = std::move(x);
  return result;
}

/// Baseline sampler: simulates the reverse-time SDE with the score implied by
/// the predicted noise, score = -eps_hat / sqrt(v_t). The last step runs
/// noise-free so the output is not dithered by one final noise draw.
template <typename T>
Image<T> reverse_sde_sample_loop(const NoiseSchedule& sched, const Image<T>& mu,
                                 NoisePredictor<T>& predictor, Rng& rng,
                                 std::optional<Image<T>> init_state = std::nullopt) {
  const int num_steps = sched.num_steps();
  Image<T> x;
  if (init_state.has_value()) {
    x = std::move(*init_state);
    require_same_shape(x, mu, "reverse_sde_sample_loop: init_state");
  } else {
    const double sd = std::sqrt(sched.variance(num_steps));
    x = mu;
    for (std::size_t i = 0; i < x.size(); ++i) {
      x.data()[i] = static_cast<T>(x.data()[i] + sd * rng.normal());
    }
  }
  for (int t = num_steps; t >= 1; --t) {
    const Image<T> eps = predictor.predict(x, mu, t);
    const double inv_sd = 1.0 / std::sqrt(sched.variance(t));
    Image<T> score(x.height(), x.width(), x.channels());
    for (std::size_t i = 0; i < score.size(); ++i) {
      score.data()[i] = static_cast<T>(-static_cast<double>(eps.data()[i]) * inv_sd);
    }
    x = reverse_sde_step(sched, x, mu, score, t, rng, /*noise_free=*/t == 1);
  }
  return x;
}

}  // namespace mrsde
