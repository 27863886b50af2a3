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

#include <cstdint>
#include <vector>

#include "relmot/assoc.hpp"
#include "relmot/core.hpp"
#include "relmot/relnet.hpp"
#include "relmot/train.hpp"

namespace relmot::sim {

/// Synthetic world parameters. Coordinates follow the camera convention:
/// x right, y down, z forward; objects rest on a ground plane below the camera.
struct SimConfig {
  std::uint64_t seed = 7;
  int n_objects = 10;
  int n_frames = 100;
  double x_min = -20.0, x_max = 20.0;  // meters
  double z_min = 8.0, z_max = 60.0;    // meters
  double speed_min = 2.0, speed_max = 12.0;  // m/s
  double frame_dt = 0.1;                     // seconds
  double birth_prob = 0.0;  // per frame, one new object
  double death_prob = 0.0;  // per frame, per object
  double jitter_3d = 0.0;   // meters, detection center noise
  double jitter_2d = 0.0;   // pixels, detection center noise
  double fn_rate = 0.0;     // probability a true object is missed
  double fp_rate = 0.0;     // per-object-slot probability of a clutter detection
  int feature_dim = 64;
  double embedding_noise = 0.0;  // per-frame sigma on identity embeddings

  void validate() const;
  bool operator==(const SimConfig&) const = default;
};

struct SimWorld {
  SimConfig config;
  std::vector<GtTrack> gt_tracks;
  std::vector<std::vector<LabeledBox>> gt_frames;  // true boxes of every live object
  std::vector<std::vector<Detection>> detections;  // per frame
  std::vector<std::vector<std::int64_t>> detection_ids;  // gt identity, -1 for clutter

  int n_frames() const { return static_cast<int>(detections.size()); }
};

/// Fixed pinhole projection of a 3D box (KITTI-like intrinsics).
Box2D project(const Box3D& b);

SimWorld generate(const SimConfig& config);

/// Frames t-1 and t; for t == 0 the previous side is empty.
FramePair frame_pair(const SimWorld& world, int t);

/// Ground-truth decision variables for frames (t-1, t): link iff same
/// identity; start for a previous object absent at t; end for a current object
/// absent at t-1; clutter is invalid.
PairLabels label_pairs(const SimWorld& world, int t);

/// Reads labels as a binary association (for constraint checks).
Association labels_to_association(const PairLabels& labels);

/// One training sample per frame pair t in [first, last].
std::vector<TrainingSample> training_samples(const SimWorld& world, int first = 0, int last = -1);

}  // namespace relmot::sim
