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

#include <set>

#include "relmot/error.hpp"
#include "relmot/sim.hpp"

namespace relmot::sim {
namespace {

TEST(Generate, SameSeedSameWorld) {
  SimConfig c;
  c.jitter_2d = 2.0;
  c.jitter_3d = 0.2;
  c.fn_rate = 0.1;
  c.fp_rate = 0.1;
  c.birth_prob = 0.1;
  c.death_prob = 0.02;
  c.embedding_noise = 0.1;
  const SimWorld a = generate(c), b = generate(c);
  ASSERT_EQ(a.n_frames(), b.n_frames());
  for (int t = 0; t < a.n_frames(); ++t) {
    EXPECT_EQ(a.detections[t], b.detections[t]);
    EXPECT_EQ(a.gt_frames[t], b.gt_frames[t]);
    EXPECT_EQ(a.detection_ids[t], b.detection_ids[t]);
  }
  c.seed += 1;
  const SimWorld d = generate(c);
  EXPECT_NE(a.detections[1], d.detections[1]);
}

TEST(Generate, ZeroNoiseGivesPermutationMatches) {
  SimConfig c;
  const SimWorld w = generate(c);
  ASSERT_EQ(w.n_frames(), c.n_frames);
  for (int t = 0; t < w.n_frames(); ++t) {
    ASSERT_EQ(static_cast<int>(w.detections[t].size()), c.n_objects);
    if (t == 0) continue;
    const PairLabels L = label_pairs(w, t);
    EXPECT_TRUE((L.affinity.colwise().sum().array() == 1.0).all());
    EXPECT_TRUE((L.affinity.rowwise().sum().array() == 1.0).all());
    EXPECT_TRUE(L.start.isZero(0.0));
    EXPECT_TRUE(L.end.isZero(0.0));
  }
}

TEST(Generate, StationaryWorldGivesIdentityLabels) {
  SimConfig c;
  c.speed_min = c.speed_max = 0.0;
  c.n_frames = 5;
  const SimWorld w = generate(c);
  for (int t = 1; t < w.n_frames(); ++t) {
    EXPECT_EQ(w.detections[t][0].box3d.cx, w.detections[0][0].box3d.cx);
    const PairLabels L = label_pairs(w, t);
    // Detection order follows identity order when nothing is born or lost.
    EXPECT_EQ(L.affinity, nn::Matrix::Identity(c.n_objects, c.n_objects));
  }
}

TEST(Generate, AllMissedLeavesOnlyClutter) {
  SimConfig c;
  c.fn_rate = 1.0;
  c.fp_rate = 0.2;
  const SimWorld w = generate(c);
  std::size_t clutter = 0;
  for (int t = 0; t < w.n_frames(); ++t) {
    for (auto id : w.detection_ids[t]) EXPECT_EQ(id, -1);
    clutter += w.detections[t].size();
    EXPECT_EQ(static_cast<int>(w.gt_frames[t].size()), c.n_objects);
  }
  EXPECT_GT(clutter, 0U);
}

TEST(Labels, SatisfyFlowIdentitiesOnRandomWorlds) {
  int frames = 0;
  for (std::uint64_t seed = 1; frames < 1000; ++seed) {
    SimConfig c;
    c.seed = seed;
    c.n_frames = 60;
    c.n_objects = 6;
    c.birth_prob = 0.2;
    c.death_prob = 0.05;
    c.fn_rate = 0.2;
    c.fp_rate = 0.2;
    c.jitter_3d = 0.1;
    const SimWorld w = generate(c);
    for (int t = 0; t < w.n_frames(); ++t, ++frames) {
      const PairLabels L = label_pairs(w, t);
      const Association a = labels_to_association(L);
      ASSERT_EQ(flow_violations(a), 0) << "seed " << seed << " frame " << t;
      const FramePair p = frame_pair(w, t);
      ASSERT_EQ(L.affinity.rows(), static_cast<Eigen::Index>(p.n()));
      ASSERT_EQ(L.affinity.cols(), static_cast<Eigen::Index>(p.m()));
      // Clutter is invalid, true detections are valid.
      for (std::size_t i = 0; i < p.curr.size(); ++i) {
        EXPECT_EQ(L.det_curr(static_cast<Eigen::Index>(i)), w.detection_ids[t][i] >= 0 ? 1.0 : 0.0);
      }
      // Links join equal identities only.
      for (const Match& mt : a.matches) {
        EXPECT_EQ(w.detection_ids[t][mt.curr], w.detection_ids[t - 1][mt.prev]);
      }
    }
  }
}

TEST(Labels, DeathSetsStartOnTheDyingObject) {
  SimConfig c;
  c.death_prob = 0.3;
  c.n_frames = 30;
  const SimWorld w = generate(c);
  bool saw_death = false;
  for (int t = 1; t < w.n_frames(); ++t) {
    const PairLabels L = label_pairs(w, t);
    std::set<std::int64_t> now(w.detection_ids[t].begin(), w.detection_ids[t].end());
    for (std::size_t j = 0; j < w.detection_ids[t - 1].size(); ++j) {
      const bool gone = !now.contains(w.detection_ids[t - 1][j]);
      EXPECT_EQ(L.start(static_cast<Eigen::Index>(j)), gone ? 1.0 : 0.0);
      saw_death = saw_death || gone;
    }
    EXPECT_EQ(flow_violations(labels_to_association(L)), 0);
  }
  EXPECT_TRUE(saw_death);
}

TEST(Generate, DetectionsFollowGroundTruthBookkeeping) {
  SimConfig c;
  c.fn_rate = 0.3;
  c.fp_rate = 0.3;
  const SimWorld w = generate(c);
  for (int t = 0; t < w.n_frames(); ++t) {
    std::set<std::int64_t> gt_ids;
    for (const auto& b : w.gt_frames[t]) gt_ids.insert(b.id);
    std::set<std::int64_t> seen;
    for (std::size_t i = 0; i < w.detections[t].size(); ++i) {
      const auto id = w.detection_ids[t][i];
      EXPECT_EQ(w.detections[t][i].frame_index, t);
      EXPECT_EQ(static_cast<int>(w.detections[t][i].feature.size()), c.feature_dim);
      if (id < 0) continue;
      EXPECT_TRUE(gt_ids.contains(id));
      EXPECT_TRUE(seen.insert(id).second);
    }
  }
}

TEST(Generate, RejectsBadConfig) {
  SimConfig c;
  c.fn_rate = 1.5;
  EXPECT_THROW(generate(c), ConfigError);
  c = SimConfig{};
  c.jitter_2d = -1.0;
  EXPECT_THROW(generate(c), ConfigError);
  EXPECT_THROW(frame_pair(generate(SimConfig{}), 100), ConfigError);
}

TEST(Project, BoxesLieInFrontAndScaleWithDepth) {
  Box3D near, far;
  near.cz = 10.0;
  far.cz = 40.0;
  const Box2D a = project(near), b = project(far);
  EXPECT_GT(a.w, b.w);
  EXPECT_GT(a.h, b.h);
}

TEST(Samples, OnePerPair) {
  SimConfig c;
  c.n_frames = 10;
  const SimWorld w = generate(c);
  EXPECT_EQ(training_samples(w).size(), 10U);
  EXPECT_EQ(training_samples(w, 1).size(), 9U);
  EXPECT_EQ(training_samples(w, 2, 4).size(), 3U);
}

}  // namespace
}  // namespace relmot::sim
