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

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace recbench {

// ---------------------------------------------------------------------------
// Error taxonomy. Split by failure class so the CLI can map each to a stable
// exit code: input/validation problems, numeric divergence, property failure.
// ---------------------------------------------------------------------------

// Input file is not syntactically valid (carries byte offset when known).
class MalformedDocument : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Document parses but a field is missing, has the wrong type, is out of its
// allowed range, or (strict mode) is unknown.
class SchemaViolation : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Document is well-formed but violates a semantic invariant: non-positive box
// size, out-of-bounds target, duplicate id, dangling image reference.
class InvariantViolation : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class DuplicatePrediction : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class EmptyDataset : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class EmptyTally : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class NoNegativeSamples : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class LengthMismatch : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class InstanceLimitExceeded : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class ShapeMismatch : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class BinOutOfRange : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class InvalidConfig : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class TooManyObjects : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class IoFailure : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class DivergenceDetected : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Core domain types.
// ---------------------------------------------------------------------------

// Axis-aligned box: top-left corner plus size, in absolute pixel coordinates.
// Valid boxes have strictly positive width and height.
struct BoundingBox {
  double x = 0;
  double y = 0;
  double w = 0;
  double h = 0;

  double area() const { return w * h; }
};

inline void validate_box(const BoundingBox& b, const std::string& context) {
  if (!(b.w > 0) || !(b.h > 0)) {
    throw InvariantViolation(context + ": box width and height must be positive, got w=" +
                             std::to_string(b.w) + " h=" + std::to_string(b.h));
  }
}

enum class ScaleClass { Small, Medium, Large };

// Area strata with boundaries 1024 (32^2) and 9216 (96^2); boundary values
// belong to Medium.
inline ScaleClass scale_class_of(double area) {
  if (area < 1024.0) return ScaleClass::Small;
  if (area <= 9216.0) return ScaleClass::Medium;
  return ScaleClass::Large;
}

inline ScaleClass scale_class_of(const BoundingBox& b) { return scale_class_of(b.area()); }

inline const char* to_string(ScaleClass s) {
  switch (s) {
    case ScaleClass::Small: return "small";
    case ScaleClass::Medium: return "medium";
    case ScaleClass::Large: return "large";
  }
  return "?";
}

// One box with its category label and confidence. Ground-truth instances
// carry score 1; an empty category means "not labeled".
struct DetectionInstance {
  BoundingBox box;
  std::string category;
  double score = 1.0;
};

// One referring expression with its ground-truth target set. An empty target
// list is the no-target case; there is no separate sentinel.
struct ExpressionRecord {
  std::string expression_id;
  std::string image_id;
  int image_width = 0;
  int image_height = 0;
  std::string text;
  std::vector<DetectionInstance> targets;

  bool no_target() const { return targets.empty(); }
};

// A system's answer for one expression. An empty box list is a legal
// "nothing matches" answer.
struct PredictionRecord {
  std::string expression_id;
  std::vector<DetectionInstance> boxes;
};

struct DatasetStats {
  std::size_t expression_count = 0;
  std::size_t image_count = 0;
  std::size_t instance_count = 0;
  double avg_targets_per_expression = 0;
  double avg_words_per_expression = 0;
  std::map<ScaleClass, std::size_t> scale_histogram;
  std::map<std::size_t, std::size_t> count_histogram;  // targets-per-expression
};

}  // namespace recbench
