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

#include <algorithm>
#include <random>

#include "relmot/error.hpp"
#include "relmot/metrics.hpp"
#include "test_util.hpp"

namespace relmot::metrics {
namespace {

LabeledBox box(std::int64_t frame, std::int64_t id, double left, double width = 10.0) {
  LabeledBox b;
  b.frame = frame;
  b.id = id;
  b.box2d = Box2D::from_corners(left, 0.0, left + width, 10.0);
  b.box3d.cx = left;
  return b;
}

using Frames = std::vector<std::vector<LabeledBox>>;

// n_tracks objects spaced 100 px apart, present in every frame.
Frames grid(int n_frames, int n_tracks) {
  Frames f(static_cast<std::size_t>(n_frames));
  for (int t = 0; t < n_frames; ++t) {
    for (int k = 0; k < n_tracks; ++k) f[static_cast<std::size_t>(t)].push_back(box(t, k + 1, 100.0 * k));
  }
  return f;
}

TEST(MatchFrame, PerfectHypotheses) {
  const Frames gt = grid(5, 3);
  const MotReport r = evaluate(gt, gt);
  EXPECT_EQ(r.totals.fn, 0);
  EXPECT_EQ(r.totals.fp, 0);
  EXPECT_EQ(r.totals.idsw, 0);
  EXPECT_EQ(r.mota, 1.0);
  EXPECT_EQ(r.motp, 1.0);
  EXPECT_EQ(r.mt, 100.0);
}

TEST(MatchFrame, EmptyHypothesisFrameCountsMisses) {
  const Frames gt = grid(1, 3);
  const FrameMatch m = match_frame(gt[0], {}, {}, {}, MetricsConfig{});
  EXPECT_EQ(m.counts.fn, 3);
  EXPECT_EQ(m.counts.gt, 3);
  EXPECT_EQ(m.counts.fp, 0);
  EXPECT_TRUE(m.mapping.empty());
}

TEST(MatchFrame, SwapGivesTwoSwitchesAtTheSwapFrame) {
  // Two objects that touch at frame 2, where the hypothesis ids swap.
  Frames gt(5), hyp(5);
  for (int t = 0; t < 5; ++t) {
    gt[t] = {box(t, 1, 0.0), box(t, 2, 100.0)};
    const bool swapped = t >= 2;
    hyp[t] = {box(t, swapped ? 20 : 10, 0.0), box(t, swapped ? 10 : 20, 100.0)};
  }
  MotAccumulator acc;
  for (int t = 0; t < 5; ++t) acc.update(gt[t], hyp[t]);
  for (int t = 0; t < 5; ++t) EXPECT_EQ(acc.frames()[t].idsw, t == 2 ? 2 : 0) << t;
  EXPECT_EQ(acc.totals().idsw, 2);
}

TEST(MatchFrame, PreviousCorrespondenceIsKeptWhileValid) {
  // Hyp 7 keeps gt 1 although hyp 8 overlaps it better.
  const std::vector<LabeledBox> gt{box(1, 1, 0.0)};
  const std::vector<LabeledBox> hyp{box(1, 7, 2.0), box(1, 8, 0.0)};
  const FrameMatch m = match_frame(gt, hyp, {{1, 7}}, {{1, 7}}, MetricsConfig{});
  EXPECT_EQ(m.mapping.at(1), 7);
  EXPECT_EQ(m.counts.idsw, 0);
  EXPECT_EQ(m.counts.fp, 1);
}

TEST(Mota, EightErrorsInHundredIsPointNineTwo) {
  Frames gt = grid(10, 10);
  Frames hyp = gt;
  hyp[9].resize(6);                                    // FN = 4
  hyp[5].push_back(box(5, 100, 5000.0));               // FP = 3
  hyp[5].push_back(box(5, 101, 6000.0));
  hyp[6].push_back(box(6, 102, 7000.0));
  for (int t = 7; t < 10; ++t) {                       // IDSW = 1
    for (auto& b : hyp[t]) {
      if (b.id == 1) b.id = 50;
    }
  }
  const MotReport r = evaluate(gt, hyp);
  EXPECT_EQ(r.totals.gt, 100);
  EXPECT_EQ(r.totals.fn, 4);
  EXPECT_EQ(r.totals.fp, 3);
  EXPECT_EQ(r.totals.idsw, 1);
  ASSERT_TRUE(r.mota.has_value());
  EXPECT_EQ(*r.mota, 0.92);
}

TEST(Motp, MeanIou) {
  const std::vector<LabeledBox> gt{box(0, 1, 0.0), box(0, 2, 100.0)};
  const std::vector<LabeledBox> hyp{box(0, 1, 0.0, 8.0), box(0, 2, 100.0, 6.0)};
  MotAccumulator acc;
  acc.update(gt, hyp);
  ASSERT_TRUE(motp(acc).has_value());
  EXPECT_EQ(acc.totals().distance_sum, 0.8 + 0.6);
  EXPECT_EQ(*motp(acc), (0.8 + 0.6) / 2.0);
  EXPECT_NEAR(*motp(acc), 0.7, 1e-15);
}

TEST(Mota, UndefinedWithoutGroundTruthAndNegativeWithClutter) {
  MotAccumulator empty;
  EXPECT_FALSE(mota(empty).has_value());
  EXPECT_FALSE(motp(empty).has_value());
  const Frames gt = grid(1, 1);
  Frames hyp(1);
  for (int k = 0; k < 5; ++k) hyp[0].push_back(box(0, k + 1, 1000.0 + 100.0 * k));
  const MotReport r = evaluate(gt, hyp);
  EXPECT_EQ(*r.mota, 1.0 - 6.0);
  EXPECT_EQ(format_key_values(evaluate(Frames(2), Frames(2))).find("MOTA=undefined") != std::string::npos, true);
}

TEST(Mota, NoHypothesesGivesZero) {
  const Frames gt = grid(4, 3);
  const MotReport r = evaluate(gt, Frames(4));
  EXPECT_EQ(*r.mota, 0.0);
  EXPECT_EQ(r.totals.fn, r.totals.gt);
  EXPECT_EQ(r.ml, 100.0);
}

TEST(Trajectories, CoverageClasses) {
  // id 1 covered 100%, id 2 covered 50% with one gap, id 3 covered 10%.
  const Frames gt = grid(10, 3);
  Frames hyp(10);
  for (int t = 0; t < 10; ++t) {
    hyp[t].push_back(box(t, 1, 0.0));
    if (t < 3 || t >= 8) hyp[t].push_back(box(t, 2, 100.0));
    if (t == 4) hyp[t].push_back(box(t, 3, 200.0));
  }
  MotAccumulator acc;
  for (int t = 0; t < 10; ++t) acc.update(gt[t], hyp[t]);
  const TrajectoryStats s = trajectory_stats(acc);
  EXPECT_EQ(s.total, 3);
  EXPECT_EQ(s.mostly_tracked, 1);
  EXPECT_EQ(s.partially_tracked, 1);
  EXPECT_EQ(s.mostly_lost, 1);
  EXPECT_EQ(s.fragmentations, 1);
}

TEST(Trajectories, BoundariesArePartial) {
  // Coverage exactly 0.8 and exactly 0.2 are both partially tracked.
  const Frames gt = grid(10, 2);
  Frames hyp(10);
  for (int t = 0; t < 10; ++t) {
    if (t < 8) hyp[t].push_back(box(t, 1, 0.0));
    if (t < 2) hyp[t].push_back(box(t, 2, 100.0));
  }
  const MotReport r = evaluate(gt, hyp);
  EXPECT_EQ(r.trajectories.partially_tracked, 2);
  EXPECT_EQ(r.pt, 100.0);
}

// Random runs: noisy copies of a random ground truth.
std::pair<Frames, Frames> random_run(std::mt19937_64& rng) {
  const int n_frames = testing::uniform_int(rng, 1, 20), n_tracks = testing::uniform_int(rng, 1, 6);
  Frames gt(static_cast<std::size_t>(n_frames)), hyp(static_cast<std::size_t>(n_frames));
  for (int t = 0; t < n_frames; ++t) {
    for (int k = 0; k < n_tracks; ++k) {
      if (testing::uniform(rng, 0, 1) < 0.15) continue;
      gt[t].push_back(box(t, k + 1, 100.0 * k));
      if (testing::uniform(rng, 0, 1) < 0.8) {
        const auto id = testing::uniform(rng, 0, 1) < 0.9 ? k + 1 : testing::uniform_int(rng, 1, 9);
        hyp[t].push_back(box(t, id, 100.0 * k + testing::uniform(rng, -3, 3)));
      }
    }
    if (testing::uniform(rng, 0, 1) < 0.3) hyp[t].push_back(box(t, 77, 100.0 * testing::uniform_int(rng, 0, 7) + 1.0));
  }
  return {gt, hyp};
}

TEST(Invariants, HypothesisIdPermutationChangesNothing) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    auto [gt, hyp] = random_run(rng);
    Frames relabeled = hyp;
    for (auto& f : relabeled) {
      for (auto& b : f) b.id = 1000 - 7 * b.id;
    }
    const MotReport a = evaluate(gt, hyp), b = evaluate(gt, relabeled);
    EXPECT_EQ(a.totals, b.totals);
    EXPECT_EQ(a.mota, b.mota);
    EXPECT_EQ(a.motp, b.motp);
    EXPECT_EQ(a.fragmentations, b.fragmentations);
    EXPECT_EQ(a.mt, b.mt);
    EXPECT_EQ(a.ml, b.ml);
  }
}

TEST(Invariants, CountsAddUp) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    auto [gt, hyp] = random_run(rng);
    MotAccumulator acc;
    for (std::size_t t = 0; t < gt.size(); ++t) acc.update(gt[t], hyp[t]);
    const TrajectoryStats s = trajectory_stats(acc);
    EXPECT_EQ(s.mostly_tracked + s.mostly_lost + s.partially_tracked, s.total);
    if (s.total > 0) {
      // Percentages are formed from integer counts; the classes are exhaustive.
      EXPECT_NEAR(s.mt_percent() + s.ml_percent() + s.pt_percent(), 100.0, 1e-12);
    }
    // MOTA from the logged per-frame counts.
    std::int64_t fn = 0, fp = 0, idsw = 0, g = 0, matches = 0;
    for (std::size_t t = 0; t < acc.frames().size(); ++t) {
      const FrameCounts& c = acc.frames()[t];
      EXPECT_EQ(c.gt, static_cast<std::int64_t>(gt[t].size()));
      EXPECT_EQ(c.matches + c.fn, c.gt);
      EXPECT_EQ(c.matches + c.fp, static_cast<std::int64_t>(hyp[t].size()));
      fn += c.fn;
      fp += c.fp;
      idsw += c.idsw;
      g += c.gt;
      matches += c.matches;
    }
    EXPECT_LE(matches, g);
    if (g > 0) {
      EXPECT_EQ(*mota(acc), 1.0 - static_cast<double>(fn + fp + idsw) / static_cast<double>(g));
    }
    if (matches > 0) {
      EXPECT_GE(*motp(acc), 0.0);
      EXPECT_LE(*motp(acc), 1.0);
    }
  }
}

TEST(Invariants, MergeAddsCounts) {
  std::mt19937_64 rng(3);
  auto [g1, h1] = random_run(rng);
  auto [g2, h2] = random_run(rng);
  MotAccumulator a, b;
  for (std::size_t t = 0; t < g1.size(); ++t) a.update(g1[t], h1[t]);
  for (std::size_t t = 0; t < g2.size(); ++t) b.update(g2[t], h2[t]);
  MotAccumulator merged = a;
  merged.merge(b);
  EXPECT_EQ(merged.totals().gt, a.totals().gt + b.totals().gt);
  EXPECT_EQ(merged.totals().idsw, a.totals().idsw + b.totals().idsw);
  EXPECT_EQ(trajectory_stats(merged).total, trajectory_stats(a).total + trajectory_stats(b).total);
}

TEST(Center3D, DistanceMatching) {
  MetricsConfig c;
  c.space = MatchSpace::Center3D;
  std::vector<LabeledBox> gt{box(0, 1, 0.0)}, near{box(0, 1, 1.5)}, far{box(0, 1, 2.5)};
  EXPECT_EQ(match_frame(gt, near, {}, {}, c).counts.matches, 1);
  EXPECT_DOUBLE_EQ(match_frame(gt, near, {}, {}, c).counts.distance_sum, 1.5);
  EXPECT_EQ(match_frame(gt, far, {}, {}, c).counts.matches, 0);
}

TEST(Config, Validation) {
  MetricsConfig c;
  c.iou_threshold = 0.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = MetricsConfig{};
  c.distance_threshold = -1.0;
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(Report, TableAndKeyValues) {
  const Frames gt = grid(3, 2);
  const MotReport r = evaluate(gt, gt);
  const std::string table = format_table({{"LP", r}}, "Method");
  EXPECT_NE(table.find("Method"), std::string::npos);
  EXPECT_NE(table.find("MOTA(%)"), std::string::npos);
  EXPECT_NE(table.find("100.00"), std::string::npos);
  const std::string kv = format_key_values(r);
  EXPECT_NE(kv.find("MOTA=100.000000\n"), std::string::npos);
  EXPECT_NE(kv.find("ID-SW=0\n"), std::string::npos);
}

}  // namespace
}  // namespace relmot::metrics
