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

#include <Eigen/Dense>
#include <cstddef>
#include <random>
#include <vector>

namespace relmot::nn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Dense affine map y = W x + b. Batches are row-major samples: Y = X W^T + b^T.
struct Linear {
  Matrix weight;  // out x in
  Vector bias;    // out

  Linear() = default;
  Linear(Eigen::Index in, Eigen::Index out)
      : weight(Matrix::Zero(out, in)), bias(Vector::Zero(out)) {}

  Eigen::Index in_dim() const { return weight.cols(); }
  Eigen::Index out_dim() const { return weight.rows(); }

  Matrix forward(const Matrix& x) const;

  /// Accumulates dW, db into `grad` and returns dX.
  Matrix backward(const Matrix& x, const Matrix& dy, Linear& grad) const;

  void set_zero();
  void glorot_init(std::mt19937_64& rng);
  bool operator==(const Linear& o) const {
    return weight == o.weight && bias == o.bias;
  }
};

/// Activations of one Mlp forward pass, kept for backward.
struct MlpCache {
  std::vector<Matrix> inputs;  // input to each layer
  std::vector<Matrix> pre;     // pre-activation output of each layer
};

/// Stack of Linear layers with a rectifier after every layer but the last.
struct Mlp {
  std::vector<Linear> layers;

  Mlp() = default;
  /// widths = {in, hidden..., out}; needs at least two entries.
  explicit Mlp(const std::vector<Eigen::Index>& widths);

  static Mlp identity(Eigen::Index width);

  Eigen::Index in_dim() const { return layers.empty() ? 0 : layers.front().in_dim(); }
  Eigen::Index out_dim() const { return layers.empty() ? 0 : layers.back().out_dim(); }
  bool empty() const { return layers.empty(); }

  Matrix forward(const Matrix& x, MlpCache* cache = nullptr) const;
  Matrix backward(const MlpCache& cache, const Matrix& dy, Mlp& grad) const;

  /// Zero-valued copy with the same shapes.
  Mlp zeros_like() const;
  void glorot_init(std::mt19937_64& rng);
  bool operator==(const Mlp& o) const { return layers == o.layers; }
};

inline Matrix relu(const Matrix& x) { return x.cwiseMax(0.0); }

inline double sigmoid(double z) {
  return z >= 0.0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z));
}

/// log(1 + exp(z)) without overflow.
inline double softplus(double z) {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

}  // namespace relmot::nn
