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

#include "relmot/nn.hpp"

#include <cmath>

#include "relmot/error.hpp"

namespace relmot::nn {

Matrix Linear::forward(const Matrix& x) const {
  if (x.cols() != in_dim()) {
    throw ConfigError("Linear: input width " + std::to_string(x.cols()) + " != " +
                      std::to_string(in_dim()));
  }
  Matrix y = x * weight.transpose();
  y.rowwise() += bias.transpose();
  return y;
}

Matrix Linear::backward(const Matrix& x, const Matrix& dy, Linear& grad) const {
  grad.weight.noalias() += dy.transpose() * x;
  grad.bias += dy.colwise().sum().transpose();
  return dy * weight;
}

void Linear::set_zero() {
  weight.setZero();
  bias.setZero();
}

void Linear::glorot_init(std::mt19937_64& rng) {
  const double a = std::sqrt(6.0 / static_cast<double>(in_dim() + out_dim()));
  std::uniform_real_distribution<double> dist(-a, a);
  for (Eigen::Index r = 0; r < weight.rows(); ++r) {
    for (Eigen::Index c = 0; c < weight.cols(); ++c) {
      weight(r, c) = dist(rng);
    }
  }
  bias.setZero();
}

Mlp::Mlp(const std::vector<Eigen::Index>& widths) {
  if (widths.size() < 2) {
    throw ConfigError("Mlp needs at least an input and an output width");
  }
  for (std::size_t k = 0; k + 1 < widths.size(); ++k) {
    layers.emplace_back(widths[k], widths[k + 1]);
  }
}

Mlp Mlp::identity(Eigen::Index width) {
  Mlp m({width, width});
  m.layers[0].weight.setIdentity();
  return m;
}

Matrix Mlp::forward(const Matrix& x, MlpCache* cache) const {
  if (cache != nullptr) {
    cache->inputs.clear();
    cache->pre.clear();
  }
  Matrix h = x;
  for (std::size_t k = 0; k < layers.size(); ++k) {
    Matrix z = layers[k].forward(h);
    if (cache != nullptr) {
      cache->inputs.push_back(std::move(h));
      cache->pre.push_back(z);
    }
    h = (k + 1 < layers.size()) ? relu(z) : std::move(z);
  }
  return h;
}

Matrix Mlp::backward(const MlpCache& cache, const Matrix& dy, Mlp& grad) const {
  Matrix d = dy;
  for (std::size_t k = layers.size(); k-- > 0;) {
    if (k + 1 < layers.size()) {
      d = d.cwiseProduct((cache.pre[k].array() > 0.0).cast<double>().matrix());
    }
    d = layers[k].backward(cache.inputs[k], d, grad.layers[k]);
  }
  return d;
}

Mlp Mlp::zeros_like() const {
  Mlp z = *this;
  for (auto& l : z.layers) {
    l.set_zero();
  }
  return z;
}

void Mlp::glorot_init(std::mt19937_64& rng) {
  for (auto& l : layers) {
    l.glorot_init(rng);
  }
}

}  // namespace relmot::nn
