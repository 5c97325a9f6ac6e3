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

#include "mrsde/annotate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace mrsde {
namespace {

using nlohmann::json;

DegradationTag tag_from_name(const std::string& name) {
  if (name == "blur") return DegradationTag::kBlur;
  if (name == "resize") return DegradationTag::kResize;
  if (name == "noise") return DegradationTag::kNoise;
  if (name == "jpeg artifacts") return DegradationTag::kJpegArtifacts;
  if (name == "ringing artifacts") return DegradationTag::kRingingArtifacts;
  throw std::invalid_argument("annotate: unknown degradation tag '" + name + "'");
}

DegradationTag op_tag(const DegradationOp& op) {
  return std::visit(
      [](const auto& o) -> DegradationTag {
        using O = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<O, BlurOp>) return DegradationTag::kBlur;
        if constexpr (std::is_same_v<O, WienerDeconvOp>) return DegradationTag::kRingingArtifacts;
        if constexpr (std::is_same_v<O, ResizeOp>) return DegradationTag::kResize;
        if constexpr (std::is_same_v<O, GaussianNoiseOp>) return DegradationTag::kNoise;
        if constexpr (std::is_same_v<O, JpegOp>) return DegradationTag::kJpegArtifacts;
      },
      op);
}

}  // namespace

std::string tag_name(DegradationTag tag) {
  switch (tag) {
    case DegradationTag::kBlur:
      return "blur";
    case DegradationTag::kResize:
      return "resize";
    case DegradationTag::kNoise:
      return "noise";
    case DegradationTag::kJpegArtifacts:
      return "jpeg artifacts";
    case DegradationTag::kRingingArtifacts:
      return "ringing artifacts";
  }
  throw std::invalid_argument("annotate: invalid tag");
}

DegradationText make_degradation_text(std::vector<DegradationTag> tags) {
  std::sort(tags.begin(), tags.end());
  tags.erase(std::unique(tags.begin(), tags.end()), tags.end());

  DegradationText text;
  text.tags = std::move(tags);
  if (text.tags.empty()) {
    text.rendered = "a clean image";
    return text;
  }
  text.rendered = "an image with ";
  for (std::size_t i = 0; i < text.tags.size(); ++i) {
    if (i > 0) text.rendered += ", ";
    text.rendered += tag_name(text.tags[i]);
  }
  return text;
}

DegradationText degradation_text(const OpLog& log) {
  std::vector<DegradationTag> tags;
  tags.reserve(log.ops.size());
  for (const LoggedOp& logged : log.ops) tags.push_back(op_tag(logged.op));
  return make_degradation_text(std::move(tags));
}

double embedding_l1(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("embedding_l1: vector lengths differ");
  }
  if (a.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::fabs(a[i] - b[i]);
  return sum / static_cast<double>(a.size());
}

DatasetRecord build_record(std::string hq_path, std::string lq_path, OpLog log) {
  DatasetRecord record;
  record.hq_path = std::move(hq_path);
  record.lq_path = std::move(lq_path);
  record.text = degradation_text(log);
  record.op_log = std::move(log);
  validate_record(record);
  return record;
}

void validate_record(const DatasetRecord& record) {
  if (record.hq_path.empty() || record.lq_path.empty()) {
    throw std::invalid_argument("DatasetRecord: paths must be non-empty");
  }
  if (degradation_text(record.op_log) != record.text) {
    throw std::invalid_argument("DatasetRecord: degradation text inconsistent with op log");
  }
}

std::string record_to_json(const DatasetRecord& record) {
  json j;
  j["hq_path"] = record.hq_path;
  j["lq_path"] = record.lq_path;
  j["op_log"] = json::parse(oplog_to_json(record.op_log));
  json tags = json::array();
  for (DegradationTag tag : record.text.tags) tags.push_back(tag_name(tag));
  j["degradation_text"] = json{{"tags", tags}, {"rendered", record.text.rendered}};
  if (!record.caption.empty()) j["caption"] = record.caption;
  return j.dump();
}

DatasetRecord record_from_json(const std::string& line) {
  const json j = json::parse(line);
  DatasetRecord record;
  record.hq_path = j.at("hq_path").get<std::string>();
  record.lq_path = j.at("lq_path").get<std::string>();
  record.op_log = oplog_from_json(j.at("op_log").dump());
  for (const json& tag : j.at("degradation_text").at("tags")) {
    record.text.tags.push_back(tag_from_name(tag.get<std::string>()));
  }
  record.text.rendered = j.at("degradation_text").at("rendered").get<std::string>();
  if (j.contains("caption")) record.caption = j.at("caption").get<std::string>();
  validate_record(record);
  return record;
}

}  // namespace mrsde
