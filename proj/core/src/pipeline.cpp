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

#include "mrsde/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include <nlohmann/json.hpp>

namespace mrsde {
namespace {

using nlohmann::json;

int scaled_dim(int dim, double scale) {
  return std::max(1, static_cast<int>(std::lround(dim * scale)));
}

double sample_range(const ParamRange& range, Rng& rng) {
  if (range.hi < range.lo) {
    throw std::invalid_argument("pipeline: parameter range with hi < lo");
  }
  return range.lo == range.hi ? range.lo : rng.uniform(range.lo, range.hi);
}

KernelSpec sample_kernel_spec(const BlurConfig& config, Rng& rng) {
  switch (rng.uniform_int(0, 3)) {
    case 0:
      return GaussianKernelSpec{sample_range(config.gaussian_sigma, rng), 0};
    case 1:
      return DefocusKernelSpec{sample_range(config.defocus_radius, rng)};
    case 2: {
      if (config.box_sizes.empty()) {
        throw std::invalid_argument("pipeline: empty box_sizes");
      }
      const auto idx = static_cast<std::size_t>(
          rng.uniform_int(0, static_cast<std::int64_t>(config.box_sizes.size()) - 1));
      return BoxKernelSpec{config.box_sizes[idx]};
    }
    default:
      return MotionKernelSpec{sample_range(config.motion_length, rng),
                              sample_range(config.motion_angle, rng)};
  }
}

Interp sample_interp(Rng& rng) {
  switch (rng.uniform_int(0, 2)) {
    case 0:
      return Interp::kNearest;
    case 1:
      return Interp::kBilinear;
    default:
      return Interp::kBicubic;
  }
}

struct OpVisitor {
  const ImageF& img;
  ImageF operator()(const BlurOp& o) const { return convolve(img, make_kernel(o.kernel)); }
  ImageF operator()(const WienerDeconvOp& o) const {
    return wiener_deconvolve(img, make_kernel(o.kernel), o.nsr);
  }
  ImageF operator()(const ResizeOp& o) const {
    if (o.scale > 0.0) return resize_scale(img, o.scale, o.interp);
    return resize(img, o.target_height, o.target_width, o.interp);
  }
  ImageF operator()(const GaussianNoiseOp& o) const {
    Rng noise_rng(o.seed);
    return add_gaussian_noise(img, o.sigma, noise_rng);
  }
  ImageF operator()(const JpegOp& o) const {
    return jpeg_roundtrip(img, o.quality, JpegOptions{o.chroma_subsample});
  }
};

// ------------------------------- JSON --------------------------------

std::string interp_name(Interp interp) {
  switch (interp) {
    case Interp::kNearest:
      return "nearest";
    case Interp::kBilinear:
      return "bilinear";
    default:
      return "bicubic";
  }
}

Interp interp_from_name(const std::string& name) {
  if (name == "nearest") return Interp::kNearest;
  if (name == "bilinear") return Interp::kBilinear;
  if (name == "bicubic") return Interp::kBicubic;
  throw std::invalid_argument("oplog: unknown interpolation '" + name + "'");
}

json kernel_to_json(const KernelSpec& spec) {
  return std::visit(
      [](const auto& s) -> json {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, GaussianKernelSpec>) {
          return json{{"type", "gaussian"}, {"sigma", s.sigma}, {"size", s.size}};
        } else if constexpr (std::is_same_v<S, DefocusKernelSpec>) {
          return json{{"type", "defocus"}, {"radius", s.radius}};
        } else if constexpr (std::is_same_v<S, BoxKernelSpec>) {
          return json{{"type", "box"}, {"size", s.size}};
        } else {
          return json{{"type", "motion"}, {"length", s.length}, {"angle", s.angle_deg}};
        }
      },
      spec);
}

KernelSpec kernel_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "gaussian") {
    return GaussianKernelSpec{j.at("sigma").get<double>(), j.at("size").get<int>()};
  }
  if (type == "defocus") return DefocusKernelSpec{j.at("radius").get<double>()};
  if (type == "box") return BoxKernelSpec{j.at("size").get<int>()};
  if (type == "motion") {
    return MotionKernelSpec{j.at("length").get<double>(), j.at("angle").get<double>()};
  }
  throw std::invalid_argument("oplog: unknown kernel type '" + type + "'");
}

json logged_op_to_json(const LoggedOp& logged) {
  json j = std::visit(
      [](const auto& o) -> json {
        using O = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<O, BlurOp>) {
          return json{{"op", "blur"}, {"kernel", kernel_to_json(o.kernel)}};
        } else if constexpr (std::is_same_v<O, WienerDeconvOp>) {
          return json{{"op", "wiener_deconv"}, {"kernel", kernel_to_json(o.kernel)}, {"nsr", o.nsr}};
        } else if constexpr (std::is_same_v<O, ResizeOp>) {
          json r{{"op", "resize"}, {"interp", interp_name(o.interp)}};
          if (o.scale > 0.0) {
            r["scale"] = o.scale;
          } else {
            r["target"] = json::array({o.target_height, o.target_width});
          }
          return r;
        } else if constexpr (std::is_same_v<O, GaussianNoiseOp>) {
          return json{{"op", "gaussian_noise"}, {"sigma", o.sigma}, {"seed", o.seed}};
        } else {
          return json{{"op", "jpeg"}, {"quality", o.quality}, {"chroma_subsample", o.chroma_subsample}};
        }
      },
      logged.op);
  j["phase"] = logged.phase;
  return j;
}

LoggedOp logged_op_from_json(const json& j) {
  LoggedOp logged;
  logged.phase = j.at("phase").get<int>();
  const std::string name = j.at("op").get<std::string>();
  if (name == "blur") {
    logged.op = BlurOp{kernel_from_json(j.at("kernel"))};
  } else if (name == "wiener_deconv") {
    logged.op = WienerDeconvOp{kernel_from_json(j.at("kernel")), j.at("nsr").get<double>()};
  } else if (name == "resize") {
    ResizeOp op;
    op.interp = interp_from_name(j.at("interp").get<std::string>());
    if (j.contains("scale")) {
      op.scale = j.at("scale").get<double>();
    } else {
      const auto& target = j.at("target");
      op.target_height = target.at(0).get<int>();
      op.target_width = target.at(1).get<int>();
    }
    logged.op = op;
  } else if (name == "gaussian_noise") {
    logged.op = GaussianNoiseOp{j.at("sigma").get<double>(), j.at("seed").get<std::uint64_t>()};
  } else if (name == "jpeg") {
    logged.op = JpegOp{j.at("quality").get<int>(), j.at("chroma_subsample").get<bool>()};
  } else {
    throw std::invalid_argument("oplog: unknown op '" + name + "'");
  }
  return logged;
}

}  // namespace

std::vector<LoggedOp> sample_phase_plan(const PipelineConfig& config, Rng& rng) {
  std::vector<LoggedOp> plan;
  for (std::size_t phase = 0; phase < config.phases.size(); ++phase) {
    const PhaseConfig& pc = config.phases[phase];
    const int phase_idx = static_cast<int>(phase);

    // A unit is one op, or a blur immediately followed by its deconvolution;
    // shuffling permutes units so the pair stays adjacent.
    std::vector<std::vector<LoggedOp>> units;

    if (rng.uniform() < pc.blur.probability) {
      std::vector<LoggedOp> unit;
      const KernelSpec blur_kernel = sample_kernel_spec(pc.blur, rng);
      unit.push_back({phase_idx, BlurOp{blur_kernel}});
      if (rng.uniform() < pc.blur.wiener_probability) {
        const KernelSpec wiener_kernel =
            pc.blur.wiener_match_kernel ? blur_kernel : sample_kernel_spec(pc.blur, rng);
        unit.push_back({phase_idx,
                        WienerDeconvOp{wiener_kernel, sample_range(pc.blur.wiener_nsr, rng)}});
      }
      units.push_back(std::move(unit));
    }
    if (rng.uniform() < pc.resize.probability) {
      ResizeOp op;
      op.scale = sample_range(pc.resize.scale, rng);
      op.interp = sample_interp(rng);
      units.push_back({{phase_idx, op}});
    }
    if (rng.uniform() < pc.noise.probability) {
      GaussianNoiseOp op;
      op.sigma = sample_range(pc.noise.sigma, rng);
      op.seed = rng.next_u64();
      units.push_back({{phase_idx, op}});
    }
    if (rng.uniform() < pc.jpeg.probability) {
      if (pc.jpeg.quality_hi < pc.jpeg.quality_lo) {
        throw std::invalid_argument("pipeline: jpeg quality range with hi < lo");
      }
      JpegOp op;
      op.quality = static_cast<int>(rng.uniform_int(pc.jpeg.quality_lo, pc.jpeg.quality_hi));
      op.chroma_subsample = config.jpeg_chroma_subsample;
      units.push_back({{phase_idx, op}});
    }

    if (config.shuffle_within_phase) rng.shuffle(units);
    for (auto& unit : units) {
      for (auto& logged : unit) plan.push_back(std::move(logged));
    }
  }
  return plan;
}

PipelineResult apply_pipeline(const ImageF& img, const PipelineConfig& config, Rng& rng) {
  std::vector<LoggedOp> plan = sample_phase_plan(config, rng);

  // Track dimensions through the plan to decide on the final resize-back
  // before touching any pixels.
  int h = img.height();
  int w = img.width();
  for (const LoggedOp& logged : plan) {
    if (const auto* op = std::get_if<ResizeOp>(&logged.op)) {
      if (op->scale > 0.0) {
        h = scaled_dim(h, op->scale);
        w = scaled_dim(w, op->scale);
      } else {
        h = op->target_height;
        w = op->target_width;
      }
    }
  }
  if (config.final_resize_back && (h != img.height() || w != img.width())) {
    ResizeOp back;
    back.interp = sample_interp(rng);
    back.target_height = img.height();
    back.target_width = img.width();
    plan.push_back({kFinalPhase, back});
  }

  PipelineResult result;
  result.log.original_height = img.height();
  result.log.original_width = img.width();
  result.log.ops = std::move(plan);

  ImageF current = img;
  for (const LoggedOp& logged : result.log.ops) {
    current = std::visit(OpVisitor{current}, logged.op);
  }
  result.log.final_height = current.height();
  result.log.final_width = current.width();
  result.lq = std::move(current);
  return result;
}

ImageF replay(const ImageF& img, const OpLog& log) {
  if (log.schema_version != 1) {
    throw std::invalid_argument("replay: unsupported oplog schema version");
  }
  if (img.height() != log.original_height || img.width() != log.original_width) {
    throw std::invalid_argument("replay: image size does not match the logged original size");
  }
  ImageF current = img;
  for (const LoggedOp& logged : log.ops) {
    current = std::visit(OpVisitor{current}, logged.op);
  }
  if (current.height() != log.final_height || current.width() != log.final_width) {
    throw std::runtime_error("replay: final size does not match the log");
  }
  return current;
}

std::string oplog_to_json(const OpLog& log, int indent) {
  json j;
  j["schema_version"] = log.schema_version;
  j["original_size"] = json::array({log.original_height, log.original_width});
  j["final_size"] = json::array({log.final_height, log.final_width});
  j["ops"] = json::array();
  for (const LoggedOp& logged : log.ops) j["ops"].push_back(logged_op_to_json(logged));
  return j.dump(indent);
}

OpLog oplog_from_json(const std::string& text) {
  const json j = json::parse(text);
  OpLog log;
  log.schema_version = j.at("schema_version").get<int>();
  if (log.schema_version != 1) {
    throw std::invalid_argument("oplog: unsupported schema version");
  }
  log.original_height = j.at("original_size").at(0).get<int>();
  log.original_width = j.at("original_size").at(1).get<int>();
  log.final_height = j.at("final_size").at(0).get<int>();
  log.final_width = j.at("final_size").at(1).get<int>();
  for (const json& op : j.at("ops")) log.ops.push_back(logged_op_from_json(op));
  return log;
}

}  // namespace mrsde
