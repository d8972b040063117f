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

#include <algorithm>

#include "recbench/types.hpp"

namespace recbench {

// Shared edges and corners have zero area and count as no intersection.
inline double intersection_area(const BoundingBox& a, const BoundingBox& b) {
  double iw = std::min(a.x + a.w, b.x + b.w) - std::max(a.x, b.x);
  double ih = std::min(a.y + a.h, b.y + b.h) - std::max(a.y, b.y);
  if (iw <= 0 || ih <= 0) return 0;
  return iw * ih;
}

// Intersection over union, in [0, 1]. Valid boxes guarantee union > 0.
inline double iou(const BoundingBox& a, const BoundingBox& b) {
  double inter = intersection_area(a, b);
  double uni = a.area() + b.area() - inter;
  return inter / uni;
}

// IoU minus (enclosing-box area - union) / enclosing-box area, in [-1, 1].
// Gives disjoint boxes a graded signal: farther apart is more negative.
inline double giou(const BoundingBox& a, const BoundingBox& b) {
  double inter = intersection_area(a, b);
  double uni = a.area() + b.area() - inter;
  double ew = std::max(a.x + a.w, b.x + b.w) - std::min(a.x, b.x);
  double eh = std::max(a.y + a.h, b.y + b.h) - std::min(a.y, b.y);
  double enclosing = ew * eh;
  return inter / uni - (enclosing - uni) / enclosing;
}

}  // namespace recbench
