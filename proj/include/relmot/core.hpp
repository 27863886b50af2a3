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

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "relmot/error.hpp"

namespace relmot {

/// Axis-aligned image box in center + extent form (pixels).
struct Box2D {
  double cx = 0.0;
  double cy = 0.0;
  double w = 1.0;
  double h = 1.0;

  double left() const { return cx - 0.5 * w; }
  double right() const { return cx + 0.5 * w; }
  double top() const { return cy - 0.5 * h; }
  double bottom() const { return cy + 0.5 * h; }

  static Box2D from_corners(double left, double top, double right, double bottom);

  bool operator==(const Box2D&) const = default;
};

/// Oriented 3D box: center (meters), extents (meters) and heading (radians).
struct Box3D {
  double cx = 0.0;
  double cy = 0.0;
  double cz = 0.0;
  double w = 1.0;
  double h = 1.0;
  double l = 1.0;
  double yaw = 0.0;

  bool operator==(const Box3D&) const = default;
};

inline constexpr std::size_t kMotionCueSize = 11;

/// [cx2, cy2, w2, h2, cx3, cy3, cz3, w3, h3, l3, yaw].
using MotionCue = std::array<double, kMotionCueSize>;

struct Detection {
  std::int64_t frame_index = 0;
  Box2D box2d;
  Box3D box3d;
  std::vector<double> feature;
  double det_score = 1.0;

  bool operator==(const Detection&) const = default;
};

/// Trajectory identity; positive and never reused inside one sequence.
struct TrackId {
  std::int64_t value = 0;

  auto operator<=>(const TrackId&) const = default;
};

/// Detections of two consecutive frames: M previous, N current.
struct FramePair {
  std::vector<Detection> prev;
  std::vector<Detection> curr;

  std::size_t m() const { return prev.size(); }
  std::size_t n() const { return curr.size(); }
};

/// One box with an identity in one frame: a ground-truth object or a
/// tracker hypothesis.
struct LabeledBox {
  std::int64_t frame = 0;
  std::int64_t id = 0;
  Box2D box2d;
  Box3D box3d;
  double score = 1.0;

  bool operator==(const LabeledBox&) const = default;
};

/// Ground-truth trajectory: one box per frame it is present in, ordered by frame.
struct GtTrack {
  TrackId id;
  std::vector<LabeledBox> boxes;
};

void validate(const Box2D& b);
void validate(const Box3D& b);
void validate(const Detection& d);

/// Checks the invariants of a pair: frame indices and a common feature width.
void validate(const FramePair& pair);

MotionCue motion_cue(const Box2D& b2, const Box3D& b3);

/// Inverse of motion_cue.
std::pair<Box2D, Box3D> split_motion_cue(const MotionCue& cue);

double iou_2d(const Box2D& a, const Box2D& b);

double center_distance_3d(const Box3D& a, const Box3D& b);

}  // namespace relmot
