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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "relmot/core.hpp"

namespace relmot::metrics {

enum class MatchSpace { Iou2D, Center3D };

struct MetricsConfig {
  MatchSpace space = MatchSpace::Iou2D;
  double iou_threshold = 0.5;       // Iou2D: a pair matches when IoU >= threshold
  double distance_threshold = 2.0;  // Center3D: match when distance <= threshold (meters)
  void validate() const;
};

/// gt id -> hypothesis id.
using Correspondence = std::map<std::int64_t, std::int64_t>;

struct FrameCounts {
  std::int64_t gt = 0;
  std::int64_t matches = 0;
  std::int64_t fn = 0;
  std::int64_t fp = 0;
  std::int64_t idsw = 0;
  double distance_sum = 0.0;  // IoU sum (Iou2D) or meters (Center3D) over matches
  bool operator==(const FrameCounts&) const = default;
};

struct FrameMatch {
  Correspondence mapping;  // this frame's gt -> hyp pairs
  FrameCounts counts;
};

/// CLEAR MOT correspondence for one frame. Pairs from `previous` (the last
/// frame's mapping) are kept while they still match; the rest are resolved by
/// optimal assignment on overlap. `last_known` (each gt's most recent hyp id,
/// across gaps) determines identity switches.
FrameMatch match_frame(std::span<const LabeledBox> gt, std::span<const LabeledBox> hyp,
                       const Correspondence& previous, const Correspondence& last_known,
                       const MetricsConfig& config);

struct TrackCoverage {
  std::int64_t frames = 0;
  std::int64_t matched = 0;
  std::int64_t fragments = 0;
  bool ever_matched = false;
  bool in_gap = false;
};

/// Sequence-local accumulator of per-frame counts and per-trajectory coverage.
class MotAccumulator {
 public:
  explicit MotAccumulator(MetricsConfig config = {});

  void update(std::span<const LabeledBox> gt, std::span<const LabeledBox> hyp);

  /// Adds another sequence's counts (trajectory ids are kept apart by sequence).
  void merge(const MotAccumulator& other);

  const std::vector<FrameCounts>& frames() const { return frames_; }
  const std::vector<TrackCoverage>& coverage() const;
  FrameCounts totals() const;
  const MetricsConfig& config() const { return config_; }

 private:
  MetricsConfig config_;
  std::vector<FrameCounts> frames_;
  std::map<std::int64_t, TrackCoverage> current_;
  std::vector<TrackCoverage> finished_;  // tracks from merged sequences
  mutable std::vector<TrackCoverage> all_;
  Correspondence previous_;
  Correspondence last_known_;
};

/// 1 - (FN + FP + IDSW) / GT; empty when there is no ground truth.
std::optional<double> mota(const MotAccumulator& acc);

/// Mean match distance (IoU under Iou2D); empty when nothing matched.
std::optional<double> motp(const MotAccumulator& acc);

struct TrajectoryStats {
  std::int64_t total = 0;
  std::int64_t mostly_tracked = 0;   // coverage > 0.8
  std::int64_t mostly_lost = 0;      // coverage < 0.2
  std::int64_t partially_tracked = 0;
  std::int64_t fragmentations = 0;

  double mt_percent() const;
  double ml_percent() const;
  double pt_percent() const;
};

TrajectoryStats trajectory_stats(const MotAccumulator& acc);

struct MotReport {
  std::optional<double> mota;
  std::optional<double> motp;
  std::int64_t id_switches = 0;
  std::int64_t fragmentations = 0;
  double mt = 0.0, ml = 0.0, pt = 0.0;  // percentages
  FrameCounts totals;
  TrajectoryStats trajectories;
};

MotReport report(const MotAccumulator& acc);

/// Evaluates per-frame hypothesis lists against per-frame ground truth.
MotReport evaluate(std::span<const std::vector<LabeledBox>> gt,
                   std::span<const std::vector<LabeledBox>> hyp, const MetricsConfig& config = {});

/// Human-readable table with the columns MOTA MOTP ID-SW Frag MT ML.
std::string format_table(const std::vector<std::pair<std::string, MotReport>>& rows,
                         const std::string& first_column = "Run");

/// key=value lines (MOTA, MOTP, ID-SW, Frag, MT, ML, PT and raw counts).
std::string format_key_values(const MotReport& r);

}  // namespace relmot::metrics
