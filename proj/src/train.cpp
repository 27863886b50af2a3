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

#include "relmot/train.hpp"

#include <cmath>
#include <random>

#include "relmot/error.hpp"

namespace relmot {

double batch_loss_and_grad(const Model& model, std::span<const TrainingSample> batch,
                           LossKind kind, Model* grad) {
  if (batch.empty()) {
    return 0.0;
  }
  double total = 0.0;
  for (const auto& sample : batch) {
    total += loss_and_grad(model, sample.pair, sample.labels, kind, grad);
  }
  const double inv = 1.0 / static_cast<double>(batch.size());
  if (grad != nullptr && batch.size() > 1) {
    for_each_parameter(*grad, [inv](const std::string&, Eigen::Ref<nn::Matrix> g) { g *= inv; });
  }
  return total * inv;
}

TrainResult train(Model model, std::span<const TrainingSample> dataset, const TrainConfig& config) {
  if (dataset.empty()) {
    throw ConfigError("train: empty dataset");
  }
  if (config.batch_size == 0) {
    throw ConfigError("train: batch_size must be positive");
  }
  TrainResult result;
  result.loss_curve.reserve(config.steps);
  std::mt19937_64 rng(config.seed);
  std::uniform_int_distribution<std::size_t> pick(0, dataset.size() - 1);
  Model velocity = model.zeros_like();
  std::vector<TrainingSample> batch;

  for (std::size_t step = 0; step < config.steps; ++step) {
    batch.clear();
    for (std::size_t b = 0; b < config.batch_size; ++b) {
      batch.push_back(dataset[pick(rng)]);
    }
    Model grad = model.zeros_like();
    const double loss = batch_loss_and_grad(model, batch, config.loss, &grad);
    if (!std::isfinite(loss)) {
      throw TrainingError(step, "non-finite loss");
    }
    result.loss_curve.push_back(loss);
    if (config.learning_rate == 0.0) {
      continue;
    }

    // Walk the three models in lockstep: velocity, grad, parameters.
    std::vector<Eigen::Ref<nn::Matrix>> g_blocks, v_blocks;
    for_each_parameter(grad, [&](const std::string&, Eigen::Ref<nn::Matrix> b) { g_blocks.push_back(b); });
    for_each_parameter(velocity,
                       [&](const std::string&, Eigen::Ref<nn::Matrix> b) { v_blocks.push_back(b); });
    std::size_t k = 0;
    for_each_parameter(model, [&](const std::string&, Eigen::Ref<nn::Matrix> p) {
      auto& v = v_blocks[k];
      const auto& g = g_blocks[k];
      if (config.momentum != 0.0) {
        v = config.momentum * v - config.learning_rate * g;
        p += v;
      } else {
        p -= config.learning_rate * g;
      }
      ++k;
    });
  }
  result.model = std::move(model);
  return result;
}

double affinity_accuracy(const Model& model, std::span<const TrainingSample> samples) {
  std::size_t correct = 0;
  std::size_t total = 0;
  for (const auto& s : samples) {
    const ScoreSet scores = forward(model, s.pair);
    for (Eigen::Index i = 0; i < scores.affinity.rows(); ++i) {
      for (Eigen::Index j = 0; j < scores.affinity.cols(); ++j) {
        const bool predicted = scores.affinity(i, j) >= 0.5;
        const bool actual = s.labels.affinity(i, j) >= 0.5;
        correct += predicted == actual ? 1 : 0;
        ++total;
      }
    }
  }
  return total == 0 ? 1.0 : static_cast<double>(correct) / static_cast<double>(total);
}

}  // namespace relmot
