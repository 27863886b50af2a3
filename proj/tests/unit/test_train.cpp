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

#include <limits>

#include "relmot/error.hpp"
#include "relmot/sim.hpp"
#include "relmot/train.hpp"

namespace relmot {
namespace {

sim::SimConfig small_world(std::uint64_t seed) {
  sim::SimConfig c;
  c.seed = seed;
  c.n_objects = 4;
  c.n_frames = 12;
  c.feature_dim = 8;
  c.embedding_noise = 0.1;
  return c;
}

ModelConfig small_model() {
  ModelConfig c;
  c.app2d_dim = 4;
  c.app3d_dim = 4;
  c.fused_dim = 8;
  c.motion_hidden = {8};
  c.motion_dim = 4;
  c.head_hidden = {8};
  return c;
}

TEST(Train, ZeroLearningRateLeavesParametersBitIdentical) {
  const auto data = sim::training_samples(sim::generate(small_world(1)), 1);
  const Model start = Model::create(small_model(), 3);
  TrainConfig tc;
  tc.steps = 20;
  tc.learning_rate = 0.0;
  tc.momentum = 0.9;
  const TrainResult r = train(start, data, tc);
  EXPECT_EQ(r.model, start);
  EXPECT_EQ(r.loss_curve.size(), 20U);
}

TEST(Train, FixedSeedGivesIdenticalCurves) {
  const auto data = sim::training_samples(sim::generate(small_world(2)), 1);
  TrainConfig tc;
  tc.steps = 60;
  tc.batch_size = 3;
  tc.momentum = 0.9;
  const TrainResult a = train(Model::create(small_model(), 4), data, tc);
  const TrainResult b = train(Model::create(small_model(), 4), data, tc);
  EXPECT_EQ(a.loss_curve, b.loss_curve);
  EXPECT_EQ(a.model, b.model);
  tc.seed = 99;
  const TrainResult c = train(Model::create(small_model(), 4), data, tc);
  EXPECT_NE(a.loss_curve, c.loss_curve);
}

TEST(Train, SingletonLossDecreasesMonotonically) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto all = sim::training_samples(sim::generate(small_world(seed)), 3, 3);
    ASSERT_EQ(all.size(), 1U);
    TrainConfig tc;
    tc.steps = 50;
    tc.learning_rate = 1e-3;
    const TrainResult r = train(Model::create(small_model(), seed), all, tc);
    ASSERT_EQ(r.loss_curve.size(), 50U);
    for (std::size_t k = 1; k < r.loss_curve.size(); ++k) {
      EXPECT_LT(r.loss_curve[k], r.loss_curve[k - 1]) << "seed " << seed << " step " << k;
    }
  }
}

TEST(Train, DivergenceRaisesTrainingErrorWithStep) {
  const auto data = sim::training_samples(sim::generate(small_world(3)), 1);
  Model start = Model::create(small_model(), 5);
  start.heads.affinity.layers.back().bias(0) = std::numeric_limits<double>::quiet_NaN();
  TrainConfig tc;
  tc.steps = 5;
  try {
    train(start, data, tc);
    FAIL() << "expected TrainingError";
  } catch (const TrainingError& e) {
    EXPECT_EQ(e.step(), 0U);
  }
}

TEST(Train, RejectsBadConfiguration) {
  const auto data = sim::training_samples(sim::generate(small_world(4)), 1);
  TrainConfig tc;
  tc.batch_size = 0;
  EXPECT_THROW(train(Model::create(small_model(), 1), data, tc), ConfigError);
  EXPECT_THROW(train(Model::create(small_model(), 1), {}, TrainConfig{}), ConfigError);
}

TEST(Train, LearnsHeldOutAffinities) {
  sim::SimConfig wc = small_world(5);
  wc.n_frames = 61;
  const auto data = sim::training_samples(sim::generate(wc), 1);
  wc.seed = 6;
  wc.n_frames = 21;
  const auto held_out = sim::training_samples(sim::generate(wc), 1);
  TrainConfig tc;
  tc.steps = 600;
  const Model start = Model::create(small_model(), 7);
  const TrainResult r = train(start, data, tc);
  EXPECT_GT(affinity_accuracy(r.model, held_out), 0.9);
  EXPECT_LT(r.loss_curve.back(), r.loss_curve.front());
}

}  // namespace
}  // namespace relmot
