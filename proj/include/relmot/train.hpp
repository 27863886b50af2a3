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
#include <span>
#include <vector>

#include "relmot/relnet.hpp"

namespace relmot {

struct TrainingSample {
  FramePair pair;
  PairLabels labels;
};

struct TrainConfig {
  std::size_t steps = 2000;
  double learning_rate = 1e-2;
  double momentum = 0.0;  // 0.9 enables heavy-ball momentum
  std::size_t batch_size = 1;
  std::uint64_t seed = 1;
  LossKind loss = LossKind::BinaryCrossEntropy;
};

struct TrainResult {
  Model model;
  std::vector<double> loss_curve;  // mean batch loss before each update
};

/// Plain (momentum) gradient descent over uniformly drawn batches. Deterministic
/// for a given seed. Throws TrainingError on a non-finite loss.
TrainResult train(Model model, std::span<const TrainingSample> dataset, const TrainConfig& config);

/// Mean loss and gradient over a batch.
double batch_loss_and_grad(const Model& model, std::span<const TrainingSample> batch,
                           LossKind kind, Model* grad);

/// Fraction of (current, previous) pairs whose affinity, thresholded at 0.5,
/// agrees with the label.
double affinity_accuracy(const Model& model, std::span<const TrainingSample> samples);

}  // namespace relmot
