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

#include "mrsde/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

namespace mrsde {
namespace {

using nlohmann::json;

void check_keys(const json& j, const std::string& section,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw std::invalid_argument("config: unknown key '" + item.key() + "' in " + section);
    }
  }
}

ParamRange range_from(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) {
    throw std::invalid_argument("config: " + where + " must be a [lo, hi] pair");
  }
  ParamRange r{j.at(0).get<double>(), j.at(1).get<double>()};
  if (r.hi < r.lo) {
    throw std::invalid_argument("config: " + where + " has hi < lo");
  }
  return r;
}

void parse_schedule(const json& j, ScheduleConfig& out) {
  check_keys(j, "schedule", {"num_steps", "noise_level", "terminal_decay", "shape"});
  if (j.contains("num_steps")) out.num_steps = j.at("num_steps").get<int>();
  if (j.contains("noise_level")) out.noise_level = j.at("noise_level").get<double>();
  if (j.contains("terminal_decay")) out.terminal_decay = j.at("terminal_decay").get<double>();
  if (j.contains("shape")) {
    const std::string shape = j.at("shape").get<std::string>();
    if (shape == "uniform") {
      out.shape = ScheduleShape::kUniform;
    } else if (shape == "flattened-cosine") {
      out.shape = ScheduleShape::kFlattenedCosine;
    } else {
      throw std::invalid_argument("config: unknown schedule shape '" + shape + "'");
    }
  }
}

void parse_blur(const json& j, BlurConfig& out) {
  check_keys(j, "pipeline.phases[].blur",
             {"probability", "gaussian_sigma", "defocus_radius", "box_sizes", "motion_length",
              "motion_angle", "wiener"});
  if (j.contains("probability")) out.probability = j.at("probability").get<double>();
  if (j.contains("gaussian_sigma")) out.gaussian_sigma = range_from(j.at("gaussian_sigma"), "gaussian_sigma");
  if (j.contains("defocus_radius")) out.defocus_radius = range_from(j.at("defocus_radius"), "defocus_radius");
  if (j.contains("box_sizes")) out.box_sizes = j.at("box_sizes").get<std::vector<int>>();
  if (j.contains("motion_length")) out.motion_length = range_from(j.at("motion_length"), "motion_length");
  if (j.contains("motion_angle")) out.motion_angle = range_from(j.at("motion_angle"), "motion_angle");
  if (j.contains("wiener")) {
    const json& w = j.at("wiener");
    check_keys(w, "pipeline.phases[].blur.wiener", {"probability", "nsr", "match_kernel"});
    if (w.contains("probability")) out.wiener_probability = w.at("probability").get<double>();
    if (w.contains("nsr")) out.wiener_nsr = range_from(w.at("nsr"), "wiener.nsr");
    if (w.contains("match_kernel")) out.wiener_match_kernel = w.at("match_kernel").get<bool>();
  }
}

PhaseConfig parse_phase(const json& j) {
  check_keys(j, "pipeline.phases[]", {"blur", "resize", "noise", "jpeg"});
  PhaseConfig out;
  if (j.contains("blur")) parse_blur(j.at("blur"), out.blur);
  if (j.contains("resize")) {
    const json& r = j.at("resize");
    check_keys(r, "pipeline.phases[].resize", {"probability", "scale"});
    if (r.contains("probability")) out.resize.probability = r.at("probability").get<double>();
    if (r.contains("scale")) out.resize.scale = range_from(r.at("scale"), "resize.scale");
  }
  if (j.contains("noise")) {
    const json& n = j.at("noise");
    check_keys(n, "pipeline.phases[].noise", {"probability", "sigma"});
    if (n.contains("probability")) out.noise.probability = n.at("probability").get<double>();
    if (n.contains("sigma")) out.noise.sigma = range_from(n.at("sigma"), "noise.sigma");
  }
  if (j.contains("jpeg")) {
    const json& q = j.at("jpeg");
    check_keys(q, "pipeline.phases[].jpeg", {"probability", "quality"});
    if (q.contains("probability")) out.jpeg.probability = q.at("probability").get<double>();
    if (q.contains("quality")) {
      const ParamRange range = range_from(q.at("quality"), "jpeg.quality");
      out.jpeg.quality_lo = static_cast<int>(range.lo);
      out.jpeg.quality_hi = static_cast<int>(range.hi);
    }
  }
  return out;
}

void parse_pipeline(const json& j, PipelineConfig& out) {
  check_keys(j, "pipeline",
             {"phases", "shuffle_within_phase", "final_resize_back", "jpeg_chroma_subsample"});
  if (j.contains("phases")) {
    out.phases.clear();
    for (const json& phase : j.at("phases")) out.phases.push_back(parse_phase(phase));
  }
  if (j.contains("shuffle_within_phase")) {
    out.shuffle_within_phase = j.at("shuffle_within_phase").get<bool>();
  }
  if (j.contains("final_resize_back")) {
    out.final_resize_back = j.at("final_resize_back").get<bool>();
  }
  if (j.contains("jpeg_chroma_subsample")) {
    out.jpeg_chroma_subsample = j.at("jpeg_chroma_subsample").get<bool>();
  }
}

void parse_restore(const json& j, RestoreConfig& out) {
  check_keys(j, "restore", {"mode", "predictor_noise"});
  if (j.contains("mode")) {
    const std::string mode = j.at("mode").get<std::string>();
    if (mode == "posterior") {
      out.mode = RestoreMode::kPosterior;
    } else if (mode == "reverse-sde") {
      out.mode = RestoreMode::kReverseSde;
    } else {
      throw std::invalid_argument("config: unknown restore mode '" + mode + "'");
    }
  }
  if (j.contains("predictor_noise")) out.predictor_noise = j.at("predictor_noise").get<double>();
}

}  // namespace

RunConfig RunConfig::from_json_text(const std::string& text) {
  const json j = json::parse(text);
  if (!j.is_object()) {
    throw std::invalid_argument("config: top level must be an object");
  }
  check_keys(j, "top level", {"seed", "workers", "patch_size", "schedule", "pipeline", "restore"});
  RunConfig out;
  if (j.contains("seed")) out.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("workers")) out.workers = j.at("workers").get<int>();
  if (j.contains("patch_size")) out.patch_size = j.at("patch_size").get<int>();
  if (j.contains("schedule")) parse_schedule(j.at("schedule"), out.schedule);
  if (j.contains("pipeline")) parse_pipeline(j.at("pipeline"), out.pipeline);
  if (j.contains("restore")) parse_restore(j.at("restore"), out.restore);

  if (out.workers < 0) throw std::invalid_argument("config: workers must be >= 0");
  if (out.patch_size < 1) throw std::invalid_argument("config: patch_size must be positive");
  out.pipeline.seed = out.seed;
  return out;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) {
    throw std::runtime_error("config: cannot open '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return from_json_text(buffer.str());
}

}  // namespace mrsde
