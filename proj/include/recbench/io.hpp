/* Copyright (c) 2026 The recbench Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License. */

#pragma once

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "recbench/types.hpp"

namespace recbench {

// Ground-truth boxes may arrive either as pixel (x, y, w, h) with the origin
// at the top-left corner, or as normalized (cx, cy, w, h) in [0, 1] which is
// converted to pixels through the owning image's size at parse time.
// Predictions are always pixel (x, y, w, h).
enum class BoxFormat { XywhPixels, CxcywhNormalized };

struct ParseOptions {
  // Strict mode rejects unknown fields; lenient mode records a warning.
  bool strict = true;
  BoxFormat box_format = BoxFormat::XywhPixels;
  std::vector<std::string>* warnings = nullptr;
};

namespace detail {

using json = nlohmann::json;

inline void warn(const ParseOptions& opts, const std::string& message) {
  if (opts.warnings) opts.warnings->push_back(message);
}

inline void check_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                               const std::string& context, const ParseOptions& opts) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) {
      if (opts.strict) {
        throw SchemaViolation(context + ": unknown field \"" + it.key() + "\"");
      }
      warn(opts, context + ": ignoring unknown field \"" + it.key() + "\"");
    }
  }
}

inline const json& require(const json& obj, const char* key, const std::string& context) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw SchemaViolation(context + ": missing field \"" + key + "\"");
  }
  return *it;
}

inline std::string require_string(const json& obj, const char* key, const std::string& context) {
  const json& v = require(obj, key, context);
  if (!v.is_string()) {
    throw SchemaViolation(context + ": field \"" + key + "\" must be a string");
  }
  return v.get<std::string>();
}

inline double require_number(const json& obj, const char* key, const std::string& context) {
  const json& v = require(obj, key, context);
  if (!v.is_number()) {
    throw SchemaViolation(context + ": field \"" + key + "\" must be a number");
  }
  return v.get<double>();
}

inline const json& require_array(const json& obj, const char* key, const std::string& context) {
  const json& v = require(obj, key, context);
  if (!v.is_array()) {
    throw SchemaViolation(context + ": field \"" + key + "\" must be an array");
  }
  return v;
}

inline BoundingBox parse_bbox(const json& arr, const std::string& context, BoxFormat format,
                              int image_width, int image_height) {
  if (!arr.is_array() || arr.size() != 4) {
    throw SchemaViolation(context + ": \"bbox\" must be an array of 4 numbers");
  }
  double v[4];
  for (std::size_t i = 0; i < 4; ++i) {
    if (!arr[i].is_number()) {
      throw SchemaViolation(context + ": \"bbox\" must be an array of 4 numbers");
    }
    v[i] = arr[i].get<double>();
  }
  BoundingBox box;
  if (format == BoxFormat::XywhPixels) {
    box = BoundingBox{v[0], v[1], v[2], v[3]};
  } else {
    double w = v[2] * image_width;
    double h = v[3] * image_height;
    box = BoundingBox{v[0] * image_width - w / 2.0, v[1] * image_height - h / 2.0, w, h};
  }
  validate_box(box, context);
  return box;
}

inline std::string load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoFailure("read failure: " + path);
  return ss.str();
}

}  // namespace detail

// Parses and validates a ground-truth annotation document:
//   {"images": [{"id", "width", "height"}],
//    "expressions": [{"id", "image_id", "text",
//                     "targets": [{"bbox": [x,y,w,h], "category"}]}]}
// Throws MalformedDocument / SchemaViolation / InvariantViolation; each error
// names the offending expression id or byte offset.
inline std::vector<ExpressionRecord> parse_ground_truth(const std::string& path,
                                                        const ParseOptions& opts = {}) {
  using detail::json;
  json doc;
  try {
    doc = json::parse(detail::load_file(path));
  } catch (const json::parse_error& e) {
    throw MalformedDocument("ground truth " + path + ": " + e.what() + " (byte " +
                            std::to_string(e.byte) + ")");
  }
  if (!doc.is_object()) throw SchemaViolation("ground truth: top level must be an object");
  detail::check_unknown_keys(doc, {"images", "expressions"}, "ground truth", opts);

  struct ImageInfo {
    int width;
    int height;
  };
  std::map<std::string, ImageInfo> images;
  for (const auto& img : detail::require_array(doc, "images", "ground truth")) {
    if (!img.is_object()) throw SchemaViolation("images: entries must be objects");
    std::string id = detail::require_string(img, "id", "images");
    std::string ctx = "image \"" + id + "\"";
    detail::check_unknown_keys(img, {"id", "width", "height"}, ctx, opts);
    double w = detail::require_number(img, "width", ctx);
    double h = detail::require_number(img, "height", ctx);
    if (w <= 0 || h <= 0) throw SchemaViolation(ctx + ": width and height must be positive");
    if (!images.emplace(id, ImageInfo{static_cast<int>(w), static_cast<int>(h)}).second) {
      throw InvariantViolation("duplicate image id \"" + id + "\"");
    }
  }

  std::vector<ExpressionRecord> records;
  std::set<std::string> seen_ids;
  for (const auto& expr : detail::require_array(doc, "expressions", "ground truth")) {
    if (!expr.is_object()) throw SchemaViolation("expressions: entries must be objects");
    std::string id = detail::require_string(expr, "id", "expressions");
    std::string ctx = "expression \"" + id + "\"";
    detail::check_unknown_keys(expr, {"id", "image_id", "text", "targets"}, ctx, opts);
    if (!seen_ids.insert(id).second) {
      throw InvariantViolation("duplicate expression id \"" + id + "\"");
    }

    ExpressionRecord rec;
    rec.expression_id = id;
    rec.image_id = detail::require_string(expr, "image_id", ctx);
    rec.text = detail::require_string(expr, "text", ctx);
    auto img_it = images.find(rec.image_id);
    if (img_it == images.end()) {
      throw InvariantViolation(ctx + ": references unknown image id \"" + rec.image_id + "\"");
    }
    rec.image_width = img_it->second.width;
    rec.image_height = img_it->second.height;

    for (const auto& t : detail::require_array(expr, "targets", ctx)) {
      if (!t.is_object()) throw SchemaViolation(ctx + ": targets entries must be objects");
      detail::check_unknown_keys(t, {"bbox", "category"}, ctx, opts);
      DetectionInstance inst;
      inst.box = detail::parse_bbox(detail::require(t, "bbox", ctx), ctx, opts.box_format,
                                    rec.image_width, rec.image_height);
      inst.category = detail::require_string(t, "category", ctx);
      inst.score = 1.0;
      // Targets must lie inside the image; no clamping tolerance.
      if (inst.box.x < 0 || inst.box.y < 0 || inst.box.x + inst.box.w > rec.image_width ||
          inst.box.y + inst.box.h > rec.image_height) {
        throw InvariantViolation(ctx + ": target box extends outside image bounds");
      }
      rec.targets.push_back(std::move(inst));
    }
    records.push_back(std::move(rec));
  }
  return records;
}

// Parses newline-delimited prediction records, in file order:
//   {"expression_id", "boxes": [{"bbox": [x,y,w,h], "score", "category"}]}
// Duplicate expression ids are retained here; evaluation rejects them.
inline std::vector<PredictionRecord> parse_predictions(const std::string& path,
                                                       const ParseOptions& opts = {}) {
  using detail::json;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open file: " + path);

  std::vector<PredictionRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json doc;
    try {
      doc = json::parse(line);
    } catch (const json::parse_error& e) {
      throw MalformedDocument("predictions " + path + " line " + std::to_string(line_no) + ": " +
                              e.what());
    }
    std::string line_ctx = "predictions line " + std::to_string(line_no);
    if (!doc.is_object()) throw SchemaViolation(line_ctx + ": record must be an object");
    detail::check_unknown_keys(doc, {"expression_id", "boxes"}, line_ctx, opts);

    PredictionRecord rec;
    rec.expression_id = detail::require_string(doc, "expression_id", line_ctx);
    std::string ctx = "prediction \"" + rec.expression_id + "\"";
    for (const auto& b : detail::require_array(doc, "boxes", ctx)) {
      if (!b.is_object()) throw SchemaViolation(ctx + ": boxes entries must be objects");
      detail::check_unknown_keys(b, {"bbox", "score", "category"}, ctx, opts);
      DetectionInstance inst;
      inst.box = detail::parse_bbox(detail::require(b, "bbox", ctx), ctx, BoxFormat::XywhPixels,
                                    0, 0);
      inst.score = detail::require_number(b, "score", ctx);
      if (inst.score < 0 || inst.score > 1) {
        throw SchemaViolation(ctx + ": score must be in [0, 1], got " +
                              std::to_string(inst.score));
      }
      inst.category = detail::require_string(b, "category", ctx);
      rec.boxes.push_back(std::move(inst));
    }
    records.push_back(std::move(rec));
  }
  return records;
}

// ---------------------------------------------------------------------------
// Serializers. write(parse(x)) parses back to a structurally identical record
// set; synthbench uses these to emit benchmarks in the exact input schema.
// ---------------------------------------------------------------------------

inline nlohmann::json ground_truth_to_json(const std::vector<ExpressionRecord>& records) {
  using detail::json;
  json images = json::array();
  std::set<std::string> seen_images;
  for (const auto& r : records) {
    if (seen_images.insert(r.image_id).second) {
      images.push_back({{"id", r.image_id}, {"width", r.image_width}, {"height", r.image_height}});
    }
  }
  json expressions = json::array();
  for (const auto& r : records) {
    json targets = json::array();
    for (const auto& t : r.targets) {
      targets.push_back({{"bbox", {t.box.x, t.box.y, t.box.w, t.box.h}},
                         {"category", t.category}});
    }
    expressions.push_back({{"id", r.expression_id},
                           {"image_id", r.image_id},
                           {"text", r.text},
                           {"targets", targets}});
  }
  return json{{"images", images}, {"expressions", expressions}};
}

inline void write_ground_truth(const std::string& path,
                               const std::vector<ExpressionRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoFailure("cannot open file for writing: " + path);
  out << ground_truth_to_json(records).dump(2) << "\n";
  if (!out) throw IoFailure("write failure: " + path);
}

inline void write_predictions(const std::string& path,
                              const std::vector<PredictionRecord>& records) {
  using detail::json;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoFailure("cannot open file for writing: " + path);
  for (const auto& r : records) {
    json boxes = json::array();
    for (const auto& b : r.boxes) {
      boxes.push_back({{"bbox", {b.box.x, b.box.y, b.box.w, b.box.h}},
                       {"score", b.score},
                       {"category", b.category}});
    }
    out << json{{"expression_id", r.expression_id}, {"boxes", boxes}}.dump() << "\n";
  }
  if (!out) throw IoFailure("write failure: " + path);
}

}  // namespace recbench
