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
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "relmot/core.hpp"
#include "relmot/fusion.hpp"
#include "relmot/graph.hpp"
#include "relmot/nn.hpp"

namespace relmot {

/// Learned per-edge filter: out = relu(filter_mlp(e)) * e (elementwise).
struct RelationConvLayer {
  nn::Mlp filter_mlp;  // edge_dim -> edge_dim
  bool operator==(const RelationConvLayer&) const = default;
};

PairGraph relation_conv(const PairGraph& g, const RelationConvLayer& layer);

/// Baseline interaction: out = relu(mlp(e)), shared across edges.
PairGraph mlp_interact(const PairGraph& g, const nn::Mlp& params);

enum class InteractionKind { Mlp, RelationConv };

std::string_view to_string(InteractionKind k);
InteractionKind parse_interaction(std::string_view s);  // mlp | relation
std::string_view table_label(InteractionKind k);

/// Scalar heads. All produce logits; `score` squashes them to (0, 1).
struct ScoreHeads {
  nn::Mlp affinity;  // edge_dim -> 1
  nn::Mlp det;       // node_dim -> 1
  nn::Mlp start;     // edge_dim -> 1, on the mean over current nodes
  nn::Mlp end;       // edge_dim -> 1, on the mean over previous nodes
  bool operator==(const ScoreHeads&) const = default;
};

/// Association scores of one frame pair, all in [0, 1].
/// affinity(i, j) pairs current detection i with previous detection j.
struct ScoreSet {
  nn::Vector det_prev;   // M
  nn::Vector det_curr;   // N
  nn::Matrix affinity;   // N x M
  nn::Vector start;      // M
  nn::Vector end;        // N

  Eigen::Index m() const { return det_prev.size(); }
  Eigen::Index n() const { return det_curr.size(); }

  /// Throws InvalidInput on inconsistent shapes or values outside [0, 1].
  void validate() const;
};

/// Mean over the current-node axis (M x E); zero rows when n == 0.
nn::Matrix pool_over_current(const PairGraph& g);
/// Mean over the previous-node axis (N x E); zero rows when m == 0.
nn::Matrix pool_over_previous(const PairGraph& g);

ScoreSet score(const nn::Matrix& curr_nodes, const nn::Matrix& prev_nodes,
               const PairGraph& g_out, const ScoreHeads& heads);

/// Uses each detection's feature vector as its node feature.
ScoreSet score(const FramePair& pair, const PairGraph& g_out, const ScoreHeads& heads);

struct ModelConfig {
  // A detection feature is [2D appearance | 3D appearance].
  Eigen::Index app2d_dim = 32;
  Eigen::Index app3d_dim = 32;
  Eigen::Index fused_dim = 32;
  std::vector<Eigen::Index> motion_hidden{32, 32};
  Eigen::Index motion_dim = 16;  // 0 disables the motion branch
  FusionMode fusion = FusionMode::Concat;
  EdgeVariant edge = EdgeVariant::AbsDiff;
  InteractionKind interaction = InteractionKind::RelationConv;
  std::vector<Eigen::Index> filter_hidden{};
  std::vector<Eigen::Index> head_hidden{64, 32};

  Eigen::Index feature_dim() const { return app2d_dim + app3d_dim; }
  Eigen::Index node_dim() const { return fused_dim + motion_dim; }
  Eigen::Index edge_dim() const { return edge_dim_for(edge, node_dim()); }
  void validate() const;
  bool operator==(const ModelConfig&) const = default;
};

/// Fixed scaling applied to motion cues before the motion MLP so pixel and
/// meter magnitudes land near unit range.
nn::Vector normalized_motion_cue(const Detection& d);

/// The full scoring network: fusion, motion MLP, graph, interaction, heads.
struct Model {
  ModelConfig config;
  FusionParams fusion;
  nn::Mlp motion;
  nn::Mlp interaction;  // RelationConv filter or MLP baseline
  ScoreHeads heads;

  static Model create(const ModelConfig& config, std::uint64_t seed);
  Model zeros_like() const;
  std::size_t parameter_count() const;
  bool operator==(const Model&) const = default;
};

/// Visits every parameter block (weights then bias per layer) in a fixed order.
/// The callback receives a name and the block as a column-major matrix.
using ParamVisitor = std::function<void(const std::string&, Eigen::Ref<nn::Matrix>)>;
using ConstParamVisitor = std::function<void(const std::string&, Eigen::Ref<const nn::Matrix>)>;
void for_each_parameter(Model& model, const ParamVisitor& fn);
void for_each_parameter(const Model& model, const ConstParamVisitor& fn);

/// Node features of the stacked detections (rows: given order).
nn::Matrix node_features(const Model& model, const std::vector<Detection>& dets);

/// Inference: scores for one frame pair.
ScoreSet forward(const Model& model, const FramePair& pair);

/// Training targets for one frame pair, same shapes as ScoreSet.
struct PairLabels {
  nn::Vector det_prev;
  nn::Vector det_curr;
  nn::Matrix affinity;
  nn::Vector start;
  nn::Vector end;
};

enum class LossKind { BinaryCrossEntropy, Squared };

/// Sum over the four score families (affinity, det, start, end) of the
/// per-family mean loss. When `grad` is non-null the analytic gradient is
/// accumulated into it.
double loss_and_grad(const Model& model, const FramePair& pair, const PairLabels& labels,
                     LossKind kind, Model* grad);

}  // namespace relmot
