// Copyright 2026 The relmot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "relmot/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace relmot {
namespace {

bool all_finite(std::initializer_list<double> values) {
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace

Box2D Box2D::from_corners(double left, double top, double right, double bottom) {
  return Box2D{0.5 * (left + right), 0.5 * (top + bottom), right - left, bottom - top};
}

void validate(const Box2D& b) {
  if (!all_finite({b.cx, b.cy, b.w, b.h})) {
    throw InvalidInput("Box2D has a non-finite component");
  }
  if (b.w <= 0.0 || b.h <= 0.0) {
    throw InvalidInput("Box2D extents must be positive");
  }
}

void validate(const Box3D& b) {
  if (!all_finite({b.cx, b.cy, b.cz, b.w, b.h, b.l, b.yaw})) {
    throw InvalidInput("Box3D has a non-finite component");
  }
  if (b.w <= 0.0 || b.h <= 0.0 || b.l <= 0.0) {
    throw InvalidInput("Box3D extents must be positive");
  }
  if (b.yaw < -std::numbers::pi || b.yaw > std::numbers::pi) {
    throw InvalidInput("Box3D yaw outside [-pi, pi]");
  }
}

void validate(const Detection& d) {
  if (d.frame_index < 0) {
    throw InvalidInput("negative frame index");
  }
  validate(d.box2d);
  validate(d.box3d);
  if (!(d.det_score >= 0.0 && d.det_score <= 1.0)) {
    throw InvalidInput("det_score outside [0, 1]");
  }
  for (double v : d.feature) {
    if (!std::isfinite(v)) {
      throw InvalidInput("detection feature has a non-finite value");
    }
  }
}

void validate(const FramePair& pair) {
  const Detection* first = nullptr;
  auto check_side = [&](const std::vector<Detection>& side, const char* name) {
    for (const auto& d : side) {
      validate(d);
      if (d.frame_index != side.front().frame_index) {
        throw InvalidInput(std::string(name) + " detections span several frames");
      }
      if (first == nullptr) {
        first = &d;
      } else if (d.feature.size() != first->feature.size()) {
        throw InvalidInput("mixed feature dimensions in frame pair");
      }
    }
  };
  check_side(pair.prev, "previous");
  check_side(pair.curr, "current");
}

MotionCue motion_cue(const Box2D& b2, const Box3D& b3) {
  if (!all_finite({b2.cx, b2.cy, b2.w, b2.h, b3.cx, b3.cy, b3.cz, b3.w, b3.h, b3.l, b3.yaw})) {
    throw InvalidInput("motion_cue: non-finite box component");
  }
  validate(b2);
  validate(b3);
  return {b2.cx, b2.cy, b2.w, b2.h, b3.cx, b3.cy, b3.cz, b3.w, b3.h, b3.l, b3.yaw};
}

std::pair<Box2D, Box3D> split_motion_cue(const MotionCue& c) {
  return {Box2D{c[0], c[1], c[2], c[3]}, Box3D{c[4], c[5], c[6], c[7], c[8], c[9], c[10]}};
}

double iou_2d(const Box2D& a, const Box2D& b) {
  validate(a);
  validate(b);
  const double iw = std::min(a.right(), b.right()) - std::max(a.left(), b.left());
  const double ih = std::min(a.bottom(), b.bottom()) - std::max(a.top(), b.top());
  if (iw <= 0.0 || ih <= 0.0) {
    return 0.0;
  }
  // Areas from the same corner arithmetic as the intersection, so identical
  // boxes give exactly 1.
  const double inter = iw * ih;
  const double area_a = (a.right() - a.left()) * (a.bottom() - a.top());
  const double area_b = (b.right() - b.left()) * (b.bottom() - b.top());
  const double uni = area_a + area_b - inter;
  return std::clamp(inter / uni, 0.0, 1.0);
}

double center_distance_3d(const Box3D& a, const Box3D& b) {
  return std::hypot(a.cx - b.cx, a.cy - b.cy, a.cz - b.cz);
}

}  // namespace relmot
