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
#include <variant>
#include <vector>

#include "mrsde/image.hpp"
#include "mrsde/kernels.hpp"
#include "mrsde/ops.hpp"
#include "mrsde/rng.hpp"

namespace mrsde {

/// Degradation operations with fully sampled parameters. Every op is
/// self-contained -- stochastic ops carry their own seed -- so a logged
/// sequence replays bit-exactly without the pipeline RNG.

struct BlurOp {
  KernelSpec kernel;
};

struct WienerDeconvOp {
  KernelSpec kernel;
  double nsr = 1e-3;
};

struct ResizeOp {
  Interp interp = Interp::kBilinear;
  double scale = 0.0;  // used when > 0
  int target_height = 0;  // used when scale == 0
  int target_width = 0;
};

struct GaussianNoiseOp {
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

struct JpegOp {
  int quality = 90;
  bool chroma_subsample = true;
};

using DegradationOp = std::variant<BlurOp, WienerDeconvOp, ResizeOp, GaussianNoiseOp, JpegOp>;

/// Phase index of an op; kFinalPhase marks the resize-back that sits outside
/// the sampled phases.
inline constexpr int kFinalPhase = -1;

struct LoggedOp {
  int phase = 0;
  DegradationOp op;
};

/// Ordered, parameter-complete record of one pipeline run.
struct OpLog {
  int schema_version = 1;
  int original_height = 0;
  int original_width = 0;
  int final_height = 0;
  int final_width = 0;
  std::vector<LoggedOp> ops;
};

struct ParamRange {
  double lo = 0.0;
  double hi = 0.0;
};

/// Candidate set and parameter ranges of one degradation phase. Defaults are
/// deliberately light so degraded images remain close to their sources.
struct BlurConfig {
  double probability = 0.5;
  ParamRange gaussian_sigma{0.2, 3.0};
  ParamRange defocus_radius{1.0, 4.0};
  std::vector<int> box_sizes{3, 5, 7};
  ParamRange motion_length{3.0, 15.0};
  ParamRange motion_angle{0.0, 180.0};
  /// Probability that a sampled blur is followed by Wiener deconvolution
  /// (ringing); the pair stays adjacent under shuffling.
  double wiener_probability = 0.3;
  ParamRange wiener_nsr{1e-4, 1e-2};
  bool wiener_match_kernel = true;
};

struct ResizeConfig {
  double probability = 0.5;
  ParamRange scale{0.5, 1.5};
};

struct NoiseConfig {
  double probability = 0.5;
  ParamRange sigma{0.005, 0.06};
};

struct JpegConfig {
  double probability = 0.5;
  int quality_lo = 40;
  int quality_hi = 95;
};

struct PhaseConfig {
  BlurConfig blur;
  ResizeConfig resize;
  NoiseConfig noise;
  JpegConfig jpeg;
};

struct PipelineConfig {
  std::vector<PhaseConfig> phases{PhaseConfig{}, PhaseConfig{}, PhaseConfig{}};
  bool shuffle_within_phase = true;
  bool final_resize_back = true;
  bool jpeg_chroma_subsample = true;
  std::uint64_t seed = 0;
};

/// Samples the phase ops only (inclusion, parameters, within-phase order);
/// the final resize-back is appended by apply_pipeline since it depends on
/// the accumulated resizes. An empty plan is legal and means identity.
std::vector<LoggedOp> sample_phase_plan(const PipelineConfig& config, Rng& rng);

struct PipelineResult {
  ImageF lq;
  OpLog log;
};

/// Samples a plan from `config`, applies it to `img`, and resizes the result
/// back to the input dimensions when configured and needed. The returned log
/// replays bit-exactly (see replay).
PipelineResult apply_pipeline(const ImageF& img, const PipelineConfig& config, Rng& rng);

/// Re-applies a logged op sequence. With the image that produced the log this
/// reproduces the LQ output bit for bit; any image of the logged original
/// size is accepted.
ImageF replay(const ImageF& img, const OpLog& log);

/// JSON (de)serialization, schema-versioned; round-trips losslessly.
std::string oplog_to_json(const OpLog& log, int indent = -1);
OpLog oplog_from_json(const std::string& text);

}  // namespace mrsde
