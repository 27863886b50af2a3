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

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>

#include "relmot/relnet.hpp"
#include "test_util.hpp"

namespace relmot::testing {

struct GradCheckResult {
  double worst = 0.0;  // largest per-block relative error
  std::string worst_block;
  std::size_t parameters = 0;
};

// Per parameter block: |analytic - numeric| / max(|analytic|, |numeric|)
// (Euclidean norms). Blocks whose difference is below an absolute floor of
// 1e-9 count as exact; the floor covers blocks with vanishing gradients,
// where the ratio is undefined.
inline GradCheckResult grad_check(const Model& model, const FramePair& pair,
                                  const PairLabels& labels, LossKind kind, double step = 1e-5) {
  Model grad = model.zeros_like();
  loss_and_grad(model, pair, labels, kind, &grad);
  std::map<std::string, nn::Matrix> analytic;
  for_each_parameter(grad, [&](const std::string& name, Eigen::Ref<const nn::Matrix> g) {
    analytic[name] = g;
  });

  GradCheckResult result;
  Model probe = model;
  for_each_parameter(probe, [&](const std::string& name, Eigen::Ref<nn::Matrix> p) {
    nn::Matrix numeric(p.rows(), p.cols());
    for (Eigen::Index r = 0; r < p.rows(); ++r) {
      for (Eigen::Index c = 0; c < p.cols(); ++c) {
        const double orig = p(r, c);
        p(r, c) = orig + step;
        const double up = loss_and_grad(probe, pair, labels, kind, nullptr);
        p(r, c) = orig - step;
        const double down = loss_and_grad(probe, pair, labels, kind, nullptr);
        p(r, c) = orig;
        numeric(r, c) = (up - down) / (2.0 * step);
      }
    }
    result.parameters += static_cast<std::size_t>(p.size());
    const nn::Matrix& a = analytic.at(name);
    const double diff = (a - numeric).norm();
    const double scale = std::max(a.norm(), numeric.norm());
    const double rel = diff <= 1e-9 ? 0.0 : diff / scale;
    if (rel > result.worst) {
      result.worst = rel;
      result.worst_block = name;
    }
  });
  return result;
}

/// A small random configuration exercising every fusion mode, edge variant
/// and interaction kind as k varies.
inline ModelConfig small_config(std::mt19937_64& rng, int k) {
  ModelConfig c;
  c.app2d_dim = uniform_int(rng, 1, 3);
  c.app3d_dim = uniform_int(rng, 1, 3);
  c.fused_dim = uniform_int(rng, 2, 4);
  c.motion_hidden = {static_cast<Eigen::Index>(uniform_int(rng, 2, 4))};
  c.motion_dim = uniform_int(rng, 0, 3);
  if (c.motion_dim == 0) c.motion_hidden.clear();
  c.fusion = static_cast<FusionMode>(k % 3);
  c.edge = static_cast<EdgeVariant>((k / 3) % 4);
  c.interaction = (k / 12) % 2 == 0 ? InteractionKind::RelationConv : InteractionKind::Mlp;
  c.filter_hidden = uniform_int(rng, 0, 1) == 0 ? std::vector<Eigen::Index>{}
                                                : std::vector<Eigen::Index>{3};
  c.head_hidden = {4, 3};
  return c;
}

inline PairLabels random_labels(std::mt19937_64& rng, int m, int n) {
  auto bits = [&](Eigen::Index r, Eigen::Index c) {
    nn::Matrix x(r, c);
    for (Eigen::Index k = 0; k < x.size(); ++k) x.data()[k] = uniform_int(rng, 0, 1);
    return x;
  };
  PairLabels L;
  L.det_prev = bits(m, 1).col(0);
  L.det_curr = bits(n, 1).col(0);
  L.affinity = bits(n, m);
  L.start = bits(m, 1).col(0);
  L.end = bits(n, 1).col(0);
  return L;
}

}  // namespace relmot::testing
