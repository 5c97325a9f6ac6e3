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

#include <span>
#include <string>
#include <vector>

#include "mrsde/pipeline.hpp"

namespace mrsde {

/// Degradation categories in canonical rendering order.
enum class DegradationTag { kBlur, kResize, kNoise, kJpegArtifacts, kRingingArtifacts };

std::string tag_name(DegradationTag tag);

/// Natural-language description of which degradation types an image contains,
/// e.g. "an image with blur, noise, ringing artifacts". Tags are deduplicated
/// and kept in canonical order; an empty set renders as "a clean image".
struct DegradationText {
  std::vector<DegradationTag> tags;
  std::string rendered;

  bool operator==(const DegradationText&) const = default;
};

DegradationText degradation_text(const OpLog& log);

/// Renders an arbitrary tag set (deduplicates and orders canonically).
DegradationText make_degradation_text(std::vector<DegradationTag> tags);

/// Mean absolute difference between two embedding vectors of equal length.
double embedding_l1(std::span<const double> a, std::span<const double> b);

/// One dataset manifest entry: an HQ/LQ pair plus the full degradation
/// provenance and its text. The caption is produced externally and may stay
/// empty.
struct DatasetRecord {
  std::string hq_path;
  std::string lq_path;
  OpLog op_log;
  DegradationText text;
  std::string caption;
};

DatasetRecord build_record(std::string hq_path, std::string lq_path, OpLog log);

/// Throws std::invalid_argument if paths are empty or the text disagrees with
/// the text regenerated from the op log.
void validate_record(const DatasetRecord& record);

/// Single-line JSON for JSONL manifests (UTF-8, no trailing newline).
std::string record_to_json(const DatasetRecord& record);
DatasetRecord record_from_json(const std::string& line);

}  // namespace mrsde
