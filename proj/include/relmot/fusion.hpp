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

#include <string>
#include <string_view>
#include <utility>

#include "relmot/nn.hpp"

namespace relmot {

enum class FusionMode { Add, Concat, WeightedSum };

std::string_view to_string(FusionMode m);
FusionMode parse_fusion_mode(std::string_view s);  // "add" | "concat" | "wsum"

/// Parameters of the 2D/3D appearance fusion. Only the maps used by the
/// selected mode influence the output; all are kept so a file can switch modes.
struct FusionParams {
  nn::Linear proj2d;       // d2 -> D
  nn::Linear proj3d;       // d3 -> D
  nn::Linear concat_proj;  // d2 + d3 -> D
  nn::Linear gate2d;       // d2 -> 1
  nn::Linear gate3d;       // d3 -> 1

  FusionParams() = default;
  FusionParams(Eigen::Index d2, Eigen::Index d3, Eigen::Index out);

  Eigen::Index in2d() const { return proj2d.in_dim(); }
  Eigen::Index in3d() const { return proj3d.in_dim(); }
  Eigen::Index out_dim() const { return proj2d.out_dim(); }

  /// Throws ConfigError when the maps do not chain.
  void check_shapes() const;
  bool operator==(const FusionParams&) const = default;
};

nn::Vector fuse_appearance(const nn::Vector& f2d, const nn::Vector& f3d, FusionMode mode,
                           const FusionParams& p);

nn::Vector fuse_with_motion(const nn::Vector& app, const nn::Vector& motion_feat);

/// Inverse of fuse_with_motion given the appearance width.
std::pair<nn::Vector, nn::Vector> split_fused(const nn::Vector& fused, Eigen::Index app_dim);

/// Batched fusion over rows of f2d / f3d, for training.
struct FusionCache {
  nn::Matrix f2d, f3d;
  nn::Matrix a2d, a3d;      // projected per-sensor features
  nn::Vector gate2d, gate3d;  // sigmoid outputs (WeightedSum)
};

nn::Matrix fuse_appearance_batch(const nn::Matrix& f2d, const nn::Matrix& f3d, FusionMode mode,
                                 const FusionParams& p, FusionCache* cache = nullptr);

/// Accumulates parameter gradients; input gradients are not needed.
void fuse_appearance_backward(const FusionCache& cache, const nn::Matrix& dout, FusionMode mode,
                              const FusionParams& p, FusionParams& grad);

}  // namespace relmot
