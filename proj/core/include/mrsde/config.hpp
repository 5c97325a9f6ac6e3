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
#include <string>

#include "mrsde/pipeline.hpp"
#include "mrsde/schedule.hpp"

namespace mrsde {

/// Diffusion schedule settings. The noise level is specified on the 0-255
/// intensity scale as is conventional; images live in [0,1] internally, so
/// the schedule is built with lambda = noise_level / 255.
struct ScheduleConfig {
  int num_steps = 100;
  double noise_level = 50.0;
  double terminal_decay = 0.005;
  ScheduleShape shape = ScheduleShape::kFlattenedCosine;

  double lambda_internal() const { return noise_level / 255.0; }
  NoiseSchedule make() const {
    return NoiseSchedule::build(num_steps, lambda_internal(), terminal_decay, shape);
  }
};

enum class RestoreMode { kPosterior, kReverseSde };

struct RestoreConfig {
  RestoreMode mode = RestoreMode::kPosterior;
  /// Standard deviation of the per-query perturbation on the oracle noise
  /// predictor; 0 selects the exact oracle.
  double predictor_noise = 0.0;
};

/// Toolkit run configuration, loadable from a JSON file. Unknown keys are
/// rejected; command-line flags override file values.
struct RunConfig {
  std::uint64_t seed = 0;
  int workers = 0;  // 0 = hardware concurrency
  int patch_size = 256;
  ScheduleConfig schedule;
  PipelineConfig pipeline;
  RestoreConfig restore;

  static RunConfig from_json_text(const std::string& text);
  static RunConfig from_file(const std::string& path);
};

}  // namespace mrsde
