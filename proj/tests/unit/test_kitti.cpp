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
#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <limits>

#include "relmot/error.hpp"
#include "relmot/kitti.hpp"
#include "relmot/sim.hpp"

namespace relmot::io {
namespace {

constexpr const char* kExampleRow = "0 1 Car 0 0 -1.57 100 100 200 180 1.5 1.6 3.9 2.0 1.5 10.0 -1.57";

TEST(Parse, ExampleRow) {
  const auto rows = parse_labels(kExampleRow);
  ASSERT_EQ(rows.size(), 1U);
  const LabeledBox b = to_labeled_box(rows[0]);
  EXPECT_EQ(b.frame, 0);
  EXPECT_EQ(b.id, 1);
  EXPECT_EQ(b.box2d.cx, 150.0);
  EXPECT_EQ(b.box2d.cy, 140.0);
  EXPECT_EQ(b.box2d.w, 100.0);
  EXPECT_EQ(b.box2d.h, 80.0);
  EXPECT_EQ(b.box3d.cx, 2.0);
  EXPECT_EQ(b.box3d.cz, 10.0);
  EXPECT_EQ(b.box3d.h, 1.5);
  EXPECT_FALSE(rows[0].score.has_value());
}

TEST(Parse, EmptyAndBlank) {
  EXPECT_TRUE(parse_labels("").empty());
  EXPECT_TRUE(parse_labels("\n\n  \n").empty());
}

TEST(Parse, MalformedLineReportsItsNumber) {
  const std::string text = std::string(kExampleRow) + "\n\n" + kExampleRow + "\n0 2 Car 0 0 x 1 2 3\n";
  try {
    parse_labels(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4U);
  }
  try {
    parse_labels("0 1 Car 0 0 -1.57 100 100 200 180 1.5 1.6 3.9 2.0 1.5 ten -1.57\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1U);
  }
  // right <= left
  EXPECT_THROW(parse_labels("0 1 Car 0 0 0 200 100 100 180 1.5 1.6 3.9 2.0 1.5 10.0 0"), ParseError);
}

TEST(Parse, SortsFramesStablyAndKeepsDontCare) {
  const auto rows = parse_labels(
      "2 1 Car 0 0 0 1 1 2 2 1 1 1 0 0 5 0\n"
      "0 -1 DontCare -1 -1 -10 1 1 2 2 -1 -1 -1 -1000 -1000 -1000 -10\n"
      "0 3 Car 0 0 0 1 1 2 2 1 1 1 0 0 5 0 0.75\n");
  ASSERT_EQ(rows.size(), 3U);
  EXPECT_EQ(rows[0].frame, 0);
  EXPECT_TRUE(rows[0].dont_care());
  EXPECT_EQ(rows[1].track_id, 3);
  EXPECT_EQ(rows[1].score, 0.75);
  EXPECT_EQ(rows[2].frame, 2);
  const auto frames = group_by_frame(rows);
  ASSERT_EQ(frames.size(), 3U);
  EXPECT_EQ(frames[0].size(), 1U);
  EXPECT_TRUE(frames[1].empty());
  EXPECT_EQ(group_tracks(rows).size(), 2U);
}

TEST(Write, SingletonAndFormat) {
  KittiRow r;
  r.frame = 3;
  r.track_id = 7;
  r.left = 10.5;
  r.top = 20.0;
  r.right = 30.123456789;
  r.bottom = 40.0;
  r.h = r.w = r.l = 1.0;
  r.z = 12.0;
  const std::string text = write_labels(std::vector<KittiRow>{r});
  EXPECT_EQ(text, "3 7 Car 0 0 0 10.5 20 30.1235 40 1 1 1 0 0 12 0\n");
  EXPECT_EQ(format_real(1234567.0), "1.23457e+06");
  EXPECT_EQ(format_real(-0.000125), "-0.000125");
}

TEST(Write, NonFiniteIsRejected) {
  KittiRow r;
  r.right = r.bottom = 1.0;
  r.x = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(write_labels(std::vector<KittiRow>{r}), InvalidInput);
  r.x = 0.0;
  r.score = std::numeric_limits<double>::infinity();
  EXPECT_THROW(write_labels(std::vector<KittiRow>{r}), InvalidInput);
}

double rounded(double v) { return std::strtod(format_real(v).c_str(), nullptr); }

TEST(RoundTrip, GeneratedSequences) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    sim::SimConfig c;
    c.seed = seed;
    c.n_frames = 20;
    c.n_objects = 5;
    c.birth_prob = 0.1;
    c.death_prob = 0.05;
    c.jitter_2d = 1.5;
    c.fp_rate = 0.2;
    c.fn_rate = 0.1;
    const sim::SimWorld w = sim::generate(c);
    std::vector<KittiRow> rows;
    for (std::size_t t = 0; t < w.detections.size(); ++t) {
      for (std::size_t i = 0; i < w.detections[t].size(); ++i) {
        const Detection& d = w.detections[t][i];
        LabeledBox b{d.frame_index, w.detection_ids[t][i], d.box2d, d.box3d, d.det_score};
        rows.push_back(to_row(b, "Car", seed % 2 == 0));
      }
    }
    const std::string text = write_labels(rows);
    const auto parsed = parse_labels(text);
    ASSERT_EQ(parsed.size(), rows.size());
    EXPECT_EQ(write_labels(parsed), text) << "seed " << seed;
    EXPECT_EQ(parse_labels(write_labels(parsed)), parsed);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      EXPECT_EQ(parsed[k].frame, rows[k].frame);
      EXPECT_EQ(parsed[k].track_id, rows[k].track_id);
      EXPECT_EQ(parsed[k].left, rounded(rows[k].left));
      EXPECT_EQ(parsed[k].bottom, rounded(rows[k].bottom));
      EXPECT_EQ(parsed[k].z, rounded(rows[k].z));
      EXPECT_EQ(parsed[k].rotation_y, rounded(rows[k].rotation_y));
      EXPECT_EQ(parsed[k].score.has_value(), seed % 2 == 0);
    }
  }
}

TEST(RoundTrip, BoxConversions) {
  LabeledBox b;
  b.frame = 4;
  b.id = 9;
  b.box2d = Box2D{150.0, 140.0, 100.0, 80.0};
  b.box3d = Box3D{2.0, 0.75, 10.0, 1.5, 1.6, 3.9, -1.5};
  const LabeledBox back = to_labeled_box(to_row(b));
  EXPECT_EQ(back.box2d, b.box2d);
  EXPECT_DOUBLE_EQ(back.box3d.cy, b.box3d.cy);
  EXPECT_EQ(back.box3d.cx, b.box3d.cx);
  EXPECT_EQ(back.box3d.l, b.box3d.l);
}

TEST(Sidecar, RoundTripAndErrors) {
  std::vector<FeatureRecord> recs{{0, 0, {1.0, -2.5}}, {0, 1, {3.0, 4.0}}, {5, 0, {0.125, 1e-300}}};
  const std::string bytes = encode_features(2, recs);
  EXPECT_EQ(bytes.substr(0, 4), "RMFS");
  EXPECT_EQ(bytes.size(), 4U + 4 + 4 + 8 + 3 * (4 + 4 + 16));
  std::uint32_t dim = 0;
  EXPECT_EQ(decode_features(bytes, &dim), recs);
  EXPECT_EQ(dim, 2U);
  EXPECT_THROW(decode_features(bytes.substr(0, bytes.size() - 1)), IoError);
  EXPECT_THROW(decode_features(bytes + "x"), IoError);
  EXPECT_THROW(decode_features("XXXX" + bytes.substr(4)), IoError);
  EXPECT_THROW(encode_features(3, recs), InvalidInput);
}

TEST(Files, AtomicWriteAndRead) {
  const auto dir = std::filesystem::temp_directory_path() / "relmot_kitti_test";
  std::filesystem::create_directories(dir);
  write_file_atomic(dir / "a.txt", "hello\n");
  EXPECT_EQ(read_file(dir / "a.txt"), "hello\n");
  EXPECT_THROW(read_file(dir / "missing.txt"), IoError);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace relmot::io
