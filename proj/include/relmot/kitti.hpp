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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "relmot/core.hpp"

namespace relmot::io {

/// One line of a KITTI tracking label file:
///   frame track_id type truncated occluded alpha
///   left top right bottom  h w l  x y z  rotation_y  [score]
/// The 3D location is the bottom-center of the box in camera coordinates.
struct KittiRow {
  std::int64_t frame = 0;
  std::int64_t track_id = -1;
  std::string type = "Car";
  double truncated = 0.0;
  int occluded = 0;
  double alpha = 0.0;
  double left = 0.0, top = 0.0, right = 0.0, bottom = 0.0;
  double h = 0.0, w = 0.0, l = 0.0;
  double x = 0.0, y = 0.0, z = 0.0;
  double rotation_y = 0.0;
  std::optional<double> score;

  bool dont_care() const { return type == "DontCare"; }
  bool operator==(const KittiRow&) const = default;
};

/// Parses label text. Blank lines are skipped; rows are stably sorted by frame.
/// Throws ParseError carrying the 1-based line number of a malformed line.
std::vector<KittiRow> parse_labels(std::string_view text);

/// Writes one row per line; reals use "%.6g" (6 significant digits, '.' as
/// decimal separator). Throws InvalidInput on a non-finite value.
std::string write_labels(std::span<const KittiRow> rows);

/// Formats a real the way write_labels does.
std::string format_real(double v);

LabeledBox to_labeled_box(const KittiRow& row);
KittiRow to_row(const LabeledBox& box, std::string type = "Car", bool with_score = false);

/// Groups non-DontCare rows into per-frame lists, covering frames [0, n_frames).
/// n_frames < 0 means "up to the largest frame present".
std::vector<std::vector<LabeledBox>> group_by_frame(std::span<const KittiRow> rows,
                                                    std::int64_t n_frames = -1);

/// Groups non-DontCare rows into trajectories ordered by id.
std::vector<GtTrack> group_tracks(std::span<const KittiRow> rows);

/// Binary feature sidecar: header {magic "RMFS", u32 version, u32 F,
/// u64 count}, then `count` records {u32 frame, u32 index, F x f64}; all
/// little-endian. `index` is the detection's position inside its frame.
struct FeatureRecord {
  std::uint32_t frame = 0;
  std::uint32_t index = 0;
  std::vector<double> values;
  bool operator==(const FeatureRecord&) const = default;
};

inline constexpr std::uint32_t kSidecarVersion = 1;

std::string encode_features(std::uint32_t dim, std::span<const FeatureRecord> records);
std::vector<FeatureRecord> decode_features(std::string_view bytes, std::uint32_t* dim = nullptr);

std::string read_file(const std::filesystem::path& path);
/// Writes to a temporary sibling and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace relmot::io
