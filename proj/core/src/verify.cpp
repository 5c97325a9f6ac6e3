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

#include "mrsde/verify.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "mrsde/annotate.hpp"
#include "mrsde/config.hpp"
#include "mrsde/image.hpp"
#include "mrsde/metrics.hpp"
#include "mrsde/ops.hpp"
#include "mrsde/pipeline.hpp"
#include "mrsde/rng.hpp"
#include "mrsde/schedule.hpp"
#include "mrsde/sde.hpp"

namespace mrsde::verify {
namespace {

std::string format(const char* fmt, ...) {
  char buf[256];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  return buf;
}

// ------------------------- procedural test images -------------------------

ImageF texture_image(int h, int w, int channels, std::uint64_t seed) {
  Rng rng(seed);
  ImageF img(h, w, channels);
  const double fx = rng.uniform(0.05, 0.25);
  const double fy = rng.uniform(0.05, 0.25);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < channels; ++c) {
        const double wave = 0.5 + 0.2 * std::sin(fx * x * (c + 1) + 0.7 * c) +
                            0.2 * std::cos(fy * y + 1.3 * c);
        const double checker = ((x / 8 + y / 8) % 2 == 0) ? 0.08 : -0.08;
        const double grain = 0.06 * (rng.uniform() - 0.5);
        img.at(y, x, c) = static_cast<float>(std::clamp(wave + checker + grain, 0.02, 0.98));
      }
    }
  }
  return img;
}

ImageF step_edge_image(int h, int w, float low, float high) {
  ImageF img(h, w, 1, low);
  for (int y = 0; y < h; ++y) {
    for (int x = w / 2; x < w; ++x) img.at(y, x, 0) = high;
  }
  return img;
}

// Mild synthetic LQ counterpart for oracle restoration checks.
ImageF degraded_mean_image(const ImageF& hq, std::uint64_t seed) {
  ImageF mu = convolve(hq, make_kernel(GaussianKernelSpec{1.5, 0}));
  Rng rng(seed);
  mu = add_gaussian_noise(mu, 0.01, rng);
  return mu;
}

// --------------------------------- checks ---------------------------------

CheckResult check_conjugacy(const VerifyOptions& options) {
  CheckResult result{"conjugacy", true, "", 0.0};
  Rng rng(options.seed, 101);
  double max_mean_err = 0.0;
  double max_var_err = 0.0;

  for (int trial = 0; trial < 1000; ++trial) {
    const double theta_bar_prev = rng.uniform(1e-3, 5.0);
    const double theta_step = rng.uniform(1e-3, 1.0);
    const double lambda = rng.uniform(0.05, 3.0);
    const double x0 = rng.uniform(-2.0, 2.0);
    const double x_t = rng.uniform(-2.0, 2.0);
    const double mu = rng.uniform(-2.0, 2.0);

    const NoiseSchedule sched =
        NoiseSchedule::from_step_thetas({theta_bar_prev, theta_step}, lambda);
    const int t = 2;  // theta_bar_{t-1} = theta_bar_prev, theta'_t = theta_step

    ImageD x_t_img(1, 1, 1, x_t);
    ImageD x0_img(1, 1, 1, x0);
    ImageD mu_img(1, 1, 1, mu);
    const PosteriorParams<double> posterior = posterior_params(sched, x_t_img, x0_img, mu_img, t);
    const double impl_mean = posterior.mean.at(0, 0, 0);
    double impl_var = posterior.variance;
    if (options.corrupt_posterior_variance) {
      impl_var /= lambda * lambda;  // simulated defect: lambda^2 dropped
    }

    // Brute-force product of the two Gaussians:
    //   transition  x_t | x_{t-1} ~ N(mu + (x_{t-1} - mu) e^{-theta'},
    //                                 lambda^2 (1 - e^{-2 theta'}))
    //   prior       x_{t-1} | x0  ~ N(m_{t-1}, v_{t-1})
    // combined by adding precisions; no shared algebra with the closed form.
    const double a = std::exp(-theta_step);
    const double trans_var = lambda * lambda * (1.0 - a * a);
    const double m_prev = mu + (x0 - mu) * std::exp(-theta_bar_prev);
    const double v_prev = lambda * lambda * (1.0 - std::exp(-2.0 * theta_bar_prev));
    const double precision = a * a / trans_var + 1.0 / v_prev;
    const double oracle_var = 1.0 / precision;
    const double oracle_mean =
        (a * (x_t - mu) / trans_var + (m_prev - mu) / v_prev) / precision + mu;

    max_mean_err = std::max(max_mean_err, std::fabs(impl_mean - oracle_mean));
    max_var_err = std::max(max_var_err, std::fabs(impl_var - oracle_var));

    // For a few tuples, also integrate the unnormalized posterior density
    // numerically (Simpson), an entirely independent route.
    if (trial < 25) {
      const double half_width = 12.0 * std::sqrt(oracle_var);
      const int n = 4096;  // intervals; n+1 samples
      const double dz = 2.0 * half_width / n;
      double w_sum = 0.0, z_sum = 0.0, zz_sum = 0.0;
      for (int i = 0; i <= n; ++i) {
        const double z = oracle_mean - half_width + i * dz;
        const double resid_t = x_t - mu - a * (z - mu);
        const double log_density = -0.5 * resid_t * resid_t / trans_var -
                                   0.5 * (z - m_prev) * (z - m_prev) / v_prev;
        const double simpson = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        const double w = simpson * std::exp(log_density);
        w_sum += w;
        z_sum += w * z;
        zz_sum += w * z * z;
      }
      const double quad_mean = z_sum / w_sum;
      const double quad_var = zz_sum / w_sum - quad_mean * quad_mean;
      if (std::fabs(quad_mean - impl_mean) > 1e-8 ||
          std::fabs(quad_var - impl_var) > 1e-6 * std::max(quad_var, 1e-6)) {
        result.passed = false;
        result.detail = format("quadrature mismatch at trial %d", trial);
      }
    }
  }

  if (max_mean_err > 1e-10 || max_var_err > 1e-10) result.passed = false;
  if (result.detail.empty()) {
    result.detail = format("max |d mean| = %.2e, max |d var| = %.2e over 1000 tuples (tol 1e-10)",
                           max_mean_err, max_var_err);
  }
  return result;
}

CheckResult check_posterior_mean_identity(const VerifyOptions& options) {
  CheckResult result{"posterior-mean-identity", true, "", 0.0};
  Rng rng(options.seed, 102);
  double max_err = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int num_steps = static_cast<int>(rng.uniform_int(1, 20));
    std::vector<double> thetas(static_cast<std::size_t>(num_steps));
    for (double& th : thetas) th = rng.uniform(1e-3, 0.5);
    const NoiseSchedule sched = NoiseSchedule::from_step_thetas(thetas, rng.uniform(0.05, 3.0));
    const int t = static_cast<int>(rng.uniform_int(1, num_steps));

    ImageD x_t(1, 1, 1, rng.uniform(-2.0, 2.0));
    ImageD x0(1, 1, 1, rng.uniform(-2.0, 2.0));
    ImageD mu(1, 1, 1, rng.uniform(-2.0, 2.0));

    const double star = optimal_reverse_step(sched, x_t, x0, mu, t).at(0, 0, 0);
    const double mean = posterior_params(sched, x_t, x0, mu, t).mean.at(0, 0, 0);
    max_err = std::max(max_err, std::fabs(star - mean));
  }
  result.passed = max_err <= 1e-12;
  result.detail = format("max |x* - mu_tilde| = %.2e over 1000 tuples (tol 1e-12)", max_err);
  return result;
}

CheckResult check_marginal_mc(const VerifyOptions& options) {
  CheckResult result{"marginal-mc", true, "", 0.0};

  // Scalar setup: T = 10 unit steps, 1000 substeps each (1e4 fine steps per
  // trajectory), 1e5 trajectories.
  const NoiseSchedule sched = NoiseSchedule::build(10, 1.0, 0.005, ScheduleShape::kUniform);
  const double x0_value = 2.0;
  const double mu_value = 0.0;
  const int substeps = 1000;
  const long total_trajectories = 100000;

  int workers = options.workers > 0 ? options.workers
                                    : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, 16);

  // Fixed chunking keyed by chunk index, so results do not depend on the
  // worker count.
  const int chunks = 64;
  std::vector<double> chunk_sum(chunks, 0.0);
  std::vector<double> chunk_sumsq(chunks, 0.0);
  std::atomic<int> next_chunk{0};

  auto worker_fn = [&]() {
    const ImageD x0(1, 1, 1, x0_value);
    const ImageD mu(1, 1, 1, mu_value);
    for (;;) {
      const int chunk = next_chunk.fetch_add(1);
      if (chunk >= chunks) break;
      const long begin = total_trajectories * chunk / chunks;
      const long end = total_trajectories * (chunk + 1) / chunks;
      Rng rng(options.seed, 0x4D43ULL + static_cast<std::uint64_t>(chunk));
      double sum = 0.0, sumsq = 0.0;
      for (long i = begin; i < end; ++i) {
        const auto states = euler_forward_simulate(sched, x0, mu, substeps, rng);
        const double xT = states.back().at(0, 0, 0);
        sum += xT;
        sumsq += xT * xT;
      }
      chunk_sum[static_cast<std::size_t>(chunk)] = sum;
      chunk_sumsq[static_cast<std::size_t>(chunk)] = sumsq;
    }
  };

  std::vector<std::thread> threads;
  for (int i = 1; i < workers; ++i) threads.emplace_back(worker_fn);
  worker_fn();
  for (std::thread& th : threads) th.join();

  double sum = 0.0, sumsq = 0.0;
  for (int c = 0; c < chunks; ++c) {
    sum += chunk_sum[static_cast<std::size_t>(c)];
    sumsq += chunk_sumsq[static_cast<std::size_t>(c)];
  }
  const double n = static_cast<double>(total_trajectories);
  const double emp_mean = sum / n;
  const double emp_var = sumsq / n - emp_mean * emp_mean;

  const int t_final = sched.num_steps();
  const double m_T = mu_value + (x0_value - mu_value) * sched.mean_coeff(t_final);
  const double v_T = sched.variance(t_final);

  const double mean_err = std::fabs(emp_mean - m_T);
  const double var_err = std::fabs(emp_var - v_T);
  const double mean_tol = 0.01 * std::fabs(x0_value - mu_value);
  const double var_tol = 0.03 * v_T;
  result.passed = mean_err <= mean_tol && var_err <= var_tol;
  result.detail = format(
      "1e5 trajectories x 1e4 substeps: |mean - m_T| = %.2e (tol %.2e), |var - v_T| = %.2e "
      "(tol %.2e)",
      mean_err, mean_tol, var_err, var_tol);
  return result;
}

CheckResult check_oracle_recovery(const VerifyOptions& options) {
  CheckResult result{"oracle-recovery", true, "", 0.0};
  const ScheduleConfig defaults;
  const NoiseSchedule sched = defaults.make();

  const ImageF x0 = texture_image(64, 64, 3, options.seed + 7);
  const ImageF mu = degraded_mean_image(x0, options.seed + 8);

  OracleNoisePredictor<float> oracle(sched, x0);
  Rng rng(options.seed, 301);
  const auto sampled = posterior_sample_loop<float>(sched, mu, oracle, rng);

  double max_err = 0.0;
  for (std::size_t i = 0; i < x0.size(); ++i) {
    max_err = std::max(max_err,
                       std::fabs(static_cast<double>(sampled.restored.data()[i]) - x0.data()[i]));
  }
  const double recovered_psnr = psnr(sampled.restored, x0);

  // Boundary algebra must hold exactly: beta_tilde_1 == 0 and mu_tilde_1 == x0.
  const double beta_1 = sched.posterior_variance(1);
  Rng boundary_rng(options.seed, 302);
  ImageF x1(64, 64, 3);
  for (float& v : x1.values()) v = static_cast<float>(boundary_rng.uniform());
  const PosteriorParams<float> p1 = posterior_params(sched, x1, x0, mu, 1);
  const bool boundary_exact = beta_1 == 0.0 && p1.mean == x0;

  result.passed = max_err < 1e-6 && recovered_psnr > 90.0 && boundary_exact;
  result.detail = format(
      "float32 max per-pixel err = %.2e (tol 1e-6), psnr = %.1f dB (floor 90), beta_1 == 0 and "
      "mu_1 == x0: %s",
      max_err, recovered_psnr, boundary_exact ? "exact" : "VIOLATED");
  return result;
}

CheckResult check_robustness(const VerifyOptions& options) {
  CheckResult result{"robustness", true, "", 0.0};
  const ScheduleConfig defaults;
  const NoiseSchedule sched = defaults.make();
  const int t_final = sched.num_steps();

  const ImageF x0 = texture_image(64, 64, 3, options.seed + 21);
  const ImageF mu = degraded_mean_image(x0, options.seed + 22);
  const double sd_T = std::sqrt(sched.variance(t_final));

  double min_gain = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 10; ++trial) {
    Rng rng(options.seed, 400 + static_cast<std::uint64_t>(trial));
    ImageF x_T = mu;
    for (float& v : x_T.values()) v = static_cast<float>(v + sd_T * rng.normal());

    PerturbedOraclePredictor<float> predictor(sched, x0, 0.1,
                                              options.seed + 500 + static_cast<std::uint64_t>(trial));
    PosteriorSampleOptions<float> loop_options;
    loop_options.init_state = x_T;
    const auto sampled = posterior_sample_loop<float>(sched, mu, predictor, rng, loop_options);

    const double before = psnr(x_T, x0);
    const double after = psnr(sampled.restored, x0);
    min_gain = std::min(min_gain, after - before);
    if (!(after > before)) result.passed = false;
  }
  result.detail =
      format("predictor noise 0.1, 10 trials: min (restored - input) psnr gain = %.2f dB (> 0)",
             min_gain);
  return result;
}

CheckResult check_inversion(const VerifyOptions& options) {
  CheckResult result{"inversion", true, "", 0.0};
  const ScheduleConfig defaults;
  const NoiseSchedule sched = defaults.make();

  const ImageD x0 = image_cast<double>(texture_image(16, 16, 1, options.seed + 31));
  const ImageD mu = image_cast<double>(texture_image(16, 16, 1, options.seed + 32));
  OracleNoisePredictor<double> oracle(sched, x0);

  Rng rng(options.seed, 601);
  double max_err = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const int t = static_cast<int>(rng.uniform_int(1, sched.num_steps()));
    const ImageD x_t = forward_sample(sched, x0, mu, t, rng);
    const ImageD estimate = estimate_x0(sched, x_t, mu, t, oracle, /*clamp_to_unit=*/false);
    for (std::size_t i = 0; i < x0.size(); ++i) {
      max_err = std::max(max_err, std::fabs(estimate.data()[i] - x0.data()[i]));
    }
  }
  result.passed = max_err <= 1e-10;
  result.detail = format("max |x0_hat - x0| = %.2e over 20 random t (tol 1e-10)", max_err);
  return result;
}

CheckResult check_determinism_replay(const VerifyOptions& options) {
  CheckResult result{"determinism-replay", true, "", 0.0};
  const ImageF img = texture_image(48, 48, 3, options.seed + 41);
  const PipelineConfig config;  // defaults: 3 phases, light ranges

  Rng rng_a(options.seed, 701);
  Rng rng_b(options.seed, 701);
  const PipelineResult a = apply_pipeline(img, config, rng_a);
  const PipelineResult b = apply_pipeline(img, config, rng_b);

  const bool same_lq = a.lq == b.lq;
  const bool same_log = oplog_to_json(a.log) == oplog_to_json(b.log);
  const ImageF replayed = replay(img, a.log);
  const bool replay_exact = replayed == a.lq;

  result.passed = same_lq && same_log && replay_exact;
  result.detail = format("rerun bit-identical: %s, log identical: %s, replay bit-exact: %s (%zu ops)",
                         same_lq ? "yes" : "NO", same_log ? "yes" : "NO",
                         replay_exact ? "yes" : "NO", a.log.ops.size());
  return result;
}

CheckResult check_ringing(const VerifyOptions&) {
  CheckResult result{"ringing", true, "", 0.0};
  const float low = 0.15f;
  const float high = 0.85f;
  const double contrast = high - low;
  const ImageF edge = step_edge_image(64, 128, low, high);

  const Kernel kernel = make_kernel(GaussianKernelSpec{2.0, 0});
  const ImageF blurred = convolve(edge, kernel);
  const ImageF deconvolved = wiener_deconvolve(blurred, kernel, 1e-3);

  const auto overshoot = [&](const ImageF& img) {
    double max_v = -std::numeric_limits<double>::infinity();
    double min_v = std::numeric_limits<double>::infinity();
    for (float v : img.values()) {
      max_v = std::max(max_v, static_cast<double>(v));
      min_v = std::min(min_v, static_cast<double>(v));
    }
    return std::max(max_v - high, low - min_v);
  };

  const double blur_overshoot = overshoot(blurred);
  const double ring_overshoot = overshoot(deconvolved);
  result.passed = ring_overshoot >= 0.01 * contrast && blur_overshoot <= 0.001 * contrast;
  result.detail = format(
      "wiener overshoot = %.1f%% of contrast (floor 1%%), plain blur = %.3f%% (cap 0.1%%)",
      100.0 * ring_overshoot / contrast, 100.0 * blur_overshoot / contrast);
  return result;
}

CheckResult check_jpeg_monotonicity(const VerifyOptions& options) {
  CheckResult result{"jpeg-monotonicity", true, "", 0.0};
  const ImageF img = texture_image(64, 64, 3, options.seed + 51);
  const double p90 = psnr(jpeg_roundtrip(img, 90), img);
  const double p50 = psnr(jpeg_roundtrip(img, 50), img);
  const double p20 = psnr(jpeg_roundtrip(img, 20), img);
  result.passed = p90 > p50 && p50 > p20;
  result.detail = format("psnr q90 = %.2f > q50 = %.2f > q20 = %.2f dB: %s", p90, p50, p20,
                         result.passed ? "yes" : "NO");
  return result;
}

CheckResult check_shuffle_uniformity(const VerifyOptions& options) {
  CheckResult result{"shuffle-uniformity", true, "", 0.0};

  PipelineConfig config;
  config.phases.resize(1);
  PhaseConfig& phase = config.phases[0];
  phase.blur.probability = 1.0;
  phase.blur.wiener_probability = 0.0;
  phase.resize.probability = 1.0;
  phase.noise.probability = 1.0;
  phase.jpeg.probability = 1.0;

  const int num_seeds = 10000;
  std::map<std::array<int, 4>, int> counts;
  for (int i = 0; i < num_seeds; ++i) {
    Rng rng(options.seed, 0x5350ULL + static_cast<std::uint64_t>(i));
    const std::vector<LoggedOp> plan = sample_phase_plan(config, rng);
    if (plan.size() != 4) {
      result.passed = false;
      result.detail = "plan did not contain exactly 4 ops";
      return result;
    }
    std::array<int, 4> order{};
    for (int k = 0; k < 4; ++k) {
      order[static_cast<std::size_t>(k)] = static_cast<int>(plan[static_cast<std::size_t>(k)].op.index());
    }
    counts[order] += 1;
  }

  // Multinomial 3 sigma band around N/24 per ordering.
  const double p = 1.0 / 24.0;
  const double expected = num_seeds * p;
  const double sigma = std::sqrt(num_seeds * p * (1.0 - p));
  int min_count = num_seeds;
  int max_count = 0;
  for (const auto& [order, count] : counts) {
    min_count = std::min(min_count, count);
    max_count = std::max(max_count, count);
  }
  const bool all_orders = counts.size() == 24;
  const bool in_band = min_count >= expected - 3.0 * sigma && max_count <= expected + 3.0 * sigma;
  result.passed = all_orders && in_band;
  result.detail = format("24 orderings over 1e4 seeds, counts in [%d, %d], 3 sigma band [%.1f, %.1f]",
                         min_count, max_count, expected - 3.0 * sigma, expected + 3.0 * sigma);
  return result;
}

CheckResult check_metrics_sanity(const VerifyOptions& options) {
  CheckResult result{"metrics-sanity", true, "", 0.0};

  const ImageF img = texture_image(32, 32, 1, options.seed + 61);
  const bool identity_inf = std::isinf(psnr(img, img));

  ImageF zeros(32, 32, 1, 0.0f);
  ImageF offset(32, 32, 1, 1.0f / 255.0f);
  const double p = psnr(zeros, offset);
  const bool uniform_ok = std::fabs(p - 48.1308036086791) <= 0.01;

  const bool ssim_identity = ssim(img, img) == 1.0;

  // Single-window closed form: constant images c and c + 0.1 have zero
  // variances, so SSIM reduces to the luminance term.
  const double c = 0.4;
  ImageF flat_a(11, 11, 1, static_cast<float>(c));
  ImageF flat_b(11, 11, 1, static_cast<float>(c + 0.1));
  const double mu1 = static_cast<double>(flat_a.at(0, 0, 0));
  const double mu2 = static_cast<double>(flat_b.at(0, 0, 0));
  const double c1 = 1e-4;
  const double expected = (2.0 * mu1 * mu2 + c1) / (mu1 * mu1 + mu2 * mu2 + c1);
  const double measured = ssim(flat_a, flat_b);
  const bool window_ok = std::fabs(measured - expected) <= 1e-9;

  result.passed = identity_inf && uniform_ok && ssim_identity && window_ok;
  result.detail = format(
      "psnr identity inf: %s; 1/255 diff = %.4f dB (48.1308 +- 0.01); ssim identity == 1: %s; "
      "single-window |d| = %.1e (tol 1e-9)",
      identity_inf ? "yes" : "NO", p, ssim_identity ? "yes" : "NO",
      std::fabs(measured - expected));
  return result;
}

CheckResult check_defaults(const VerifyOptions&) {
  CheckResult result{"defaults", true, "", 0.0};
  const RunConfig config;
  const bool steps_ok = config.schedule.num_steps == 100;
  const bool noise_ok = config.schedule.noise_level == 50.0;
  const bool patch_ok = config.patch_size == 256;
  const bool lambda_ok = config.schedule.make().lambda() == 50.0 / 255.0;
  result.passed = steps_ok && noise_ok && patch_ok && lambda_ok;
  result.detail = format("T = %d (want 100), noise level = %g (want 50), patch = %d (want 256)",
                         config.schedule.num_steps, config.schedule.noise_level,
                         config.patch_size);
  return result;
}

using CheckFn = std::function<CheckResult(const VerifyOptions&)>;

const std::vector<std::pair<std::string, CheckFn>>& registry() {
  static const std::vector<std::pair<std::string, CheckFn>> checks = {
      {"conjugacy", check_conjugacy},
      {"posterior-mean-identity", check_posterior_mean_identity},
      {"marginal-mc", check_marginal_mc},
      {"oracle-recovery", check_oracle_recovery},
      {"robustness", check_robustness},
      {"inversion", check_inversion},
      {"determinism-replay", check_determinism_replay},
      {"ringing", check_ringing},
      {"jpeg-monotonicity", check_jpeg_monotonicity},
      {"shuffle-uniformity", check_shuffle_uniformity},
      {"metrics-sanity", check_metrics_sanity},
      {"defaults", check_defaults},
  };
  return checks;
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

std::vector<CheckResult> run_checks(const VerifyOptions& options) {
  if (!options.only.empty()) {
    bool known = false;
    for (const auto& [name, fn] : registry()) known = known || name == options.only;
    if (!known) {
      throw std::invalid_argument("verify: unknown check '" + options.only + "'");
    }
  }
  std::vector<CheckResult> results;
  for (const auto& [name, fn] : registry()) {
    if (!options.only.empty() && name != options.only) continue;
    const auto start = std::chrono::steady_clock::now();
    CheckResult result = fn(options);
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    results.push_back(std::move(result));
  }
  return results;
}

}  // namespace mrsde::verify
