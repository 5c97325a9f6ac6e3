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

#include "mrsde/schedule.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace mrsde {
namespace {

// Floor keeping the cosine profile strictly positive at t = T.
constexpr double kCosineFloor = 0.15;

std::vector<double> raw_profile(int num_steps, ScheduleShape shape) {
  std::vector<double> raw(static_cast<std::size_t>(num_steps), 1.0);
  if (shape == ScheduleShape::kFlattenedCosine) {
    for (int i = 0; i < num_steps; ++i) {
      const double u = (i + 0.5) / num_steps;  // step midpoint in (0, 1)
      const double c = std::cos(0.5 * std::numbers::pi * u);
      raw[static_cast<std::size_t>(i)] = kCosineFloor + c * c;
    }
  }
  return raw;
}

}  // namespace

NoiseSchedule NoiseSchedule::build(int num_steps, double lambda, double terminal_decay,
                                   ScheduleShape shape) {
  if (num_steps < 1) {
    throw std::invalid_argument("NoiseSchedule: num_steps must be >= 1");
  }
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("NoiseSchedule: lambda must be positive");
  }
  if (!(terminal_decay > 0.0) || !(terminal_decay < 1.0)) {
    throw std::invalid_argument("NoiseSchedule: terminal_decay must lie in (0, 1)");
  }

  std::vector<double> raw = raw_profile(num_steps, shape);
  double raw_sum = 0.0;
  for (double r : raw) raw_sum += r;

  // Scale so that sum theta'_i = -ln(terminal_decay).
  const double scale = -std::log(terminal_decay) / raw_sum;

  NoiseSchedule sched;
  sched.lambda_ = lambda;
  sched.step_theta_.resize(raw.size());
  sched.cum_theta_.resize(raw.size() + 1);
  sched.cum_theta_[0] = 0.0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    sched.step_theta_[i] = scale * raw[i];
    sched.cum_theta_[i + 1] = sched.cum_theta_[i] + sched.step_theta_[i];
  }
  return sched;
}

NoiseSchedule NoiseSchedule::from_step_thetas(const std::vector<double>& step_thetas,
                                              double lambda) {
  if (step_thetas.empty()) {
    throw std::invalid_argument("NoiseSchedule: need at least one step");
  }
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("NoiseSchedule: lambda must be positive");
  }
  NoiseSchedule sched;
  sched.lambda_ = lambda;
  sched.step_theta_ = step_thetas;
  sched.cum_theta_.resize(step_thetas.size() + 1);
  sched.cum_theta_[0] = 0.0;
  for (std::size_t i = 0; i < step_thetas.size(); ++i) {
    if (!(step_thetas[i] > 0.0)) {
      throw std::invalid_argument("NoiseSchedule: step thetas must be positive");
    }
    sched.cum_theta_[i + 1] = sched.cum_theta_[i] + step_thetas[i];
  }
  return sched;
}

void NoiseSchedule::require_step(int t, bool allow_zero) const {
  const int lo = allow_zero ? 0 : 1;
  if (t < lo || t > num_steps()) {
    throw std::out_of_range("NoiseSchedule: step index out of range");
  }
}

double NoiseSchedule::step_theta(int t) const {
  require_step(t, false);
  return step_theta_[static_cast<std::size_t>(t - 1)];
}

double NoiseSchedule::cum_theta(int t) const {
  require_step(t, true);
  return cum_theta_[static_cast<std::size_t>(t)];
}

double NoiseSchedule::mean_coeff(int t) const { return std::exp(-cum_theta(t)); }

double NoiseSchedule::variance(int t) const {
  return lambda_ * lambda_ * (1.0 - std::exp(-2.0 * cum_theta(t)));
}

double NoiseSchedule::step_sigma2(int t) const { return 2.0 * lambda_ * lambda_ * step_theta(t); }

double NoiseSchedule::posterior_variance(int t) const {
  require_step(t, false);
  const double prev = 1.0 - std::exp(-2.0 * cum_theta(t - 1));
  const double step = 1.0 - std::exp(-2.0 * step_theta(t));
  const double total = 1.0 - std::exp(-2.0 * cum_theta(t));
  return lambda_ * lambda_ * prev * step / total;
}

void NoiseSchedule::dump_csv(std::ostream& os) const {
  const auto old_precision = os.precision(std::numeric_limits<double>::max_digits10);
  os << "t,theta_prime,theta_bar,m_coeff,v_t,beta_tilde_t\n";
  for (int t = 0; t <= num_steps(); ++t) {
    os << t << ',' << (t == 0 ? 0.0 : step_theta(t)) << ',' << cum_theta(t) << ','
       << mean_coeff(t) << ',' << variance(t) << ','
       << (t == 0 ? 0.0 : posterior_variance(t)) << '\n';
  }
  os.precision(old_precision);
}

}  // namespace mrsde
