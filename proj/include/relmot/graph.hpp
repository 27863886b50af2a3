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

#include "relmot/core.hpp"
#include "relmot/nn.hpp"

namespace relmot {

/// How an edge feature is formed from the current node x_i and previous node x_j.
enum class EdgeVariant {
  NeighborOnly,  // x_j
  AbsDiff,       // |x_i - x_j|
  Diff,          // x_i - x_j
  ConcatPair,    // [x_i, x_j]
};

std::string_view to_string(EdgeVariant v);
EdgeVariant parse_edge_variant(std::string_view s);  // neighbor | absdiff | diff | concat

/// Row label used in ablation tables.
std::string_view table_label(EdgeVariant v);

Eigen::Index edge_dim_for(EdgeVariant v, Eigen::Index node_dim);

/// Dense bipartite edge grid between n current and m previous nodes.
/// Edge (i, j) is row i * m + j of `edges`.
class PairGraph {
 public:
  PairGraph() = default;
  PairGraph(Eigen::Index n, Eigen::Index m, Eigen::Index edge_dim)
      : n_(n), m_(m), edges_(nn::Matrix::Zero(n * m, edge_dim)) {}
  PairGraph(Eigen::Index n, Eigen::Index m, nn::Matrix edges);

  Eigen::Index n() const { return n_; }
  Eigen::Index m() const { return m_; }
  Eigen::Index edge_dim() const { return edges_.cols(); }

  auto edge(Eigen::Index i, Eigen::Index j) { return edges_.row(i * m_ + j); }
  auto edge(Eigen::Index i, Eigen::Index j) const { return edges_.row(i * m_ + j); }

  const nn::Matrix& edges() const { return edges_; }
  nn::Matrix& edges() { return edges_; }

  bool operator==(const PairGraph& o) const {
    return n_ == o.n_ && m_ == o.m_ && edges_.cols() == o.edges_.cols() && edges_ == o.edges_;
  }

 private:
  Eigen::Index n_ = 0;
  Eigen::Index m_ = 0;
  nn::Matrix edges_;
};

/// Builds the graph from node feature matrices (rows = nodes).
PairGraph build_graph(const nn::Matrix& curr_nodes, const nn::Matrix& prev_nodes,
                      EdgeVariant variant);

/// Builds the graph from the detections' feature vectors.
PairGraph build_graph(const FramePair& pair, EdgeVariant variant);

/// Back-propagates edge gradients to the node matrices (accumulating).
void build_graph_backward(const nn::Matrix& curr_nodes, const nn::Matrix& prev_nodes,
                          EdgeVariant variant, const nn::Matrix& d_edges, nn::Matrix& d_curr,
                          nn::Matrix& d_prev);

}  // namespace relmot
