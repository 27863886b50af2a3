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

#include "relmot/graph.hpp"

#include "relmot/error.hpp"

namespace relmot {

std::string_view to_string(EdgeVariant v) {
  switch (v) {
    case EdgeVariant::NeighborOnly:
      return "neighbor";
    case EdgeVariant::AbsDiff:
      return "absdiff";
    case EdgeVariant::Diff:
      return "diff";
    case EdgeVariant::ConcatPair:
      return "concat";
  }
  return "?";
}

EdgeVariant parse_edge_variant(std::string_view s) {
  if (s == "neighbor") return EdgeVariant::NeighborOnly;
  if (s == "absdiff") return EdgeVariant::AbsDiff;
  if (s == "diff") return EdgeVariant::Diff;
  if (s == "concat") return EdgeVariant::ConcatPair;
  throw ConfigError("unknown edge variant '" + std::string(s) + "' (neighbor|absdiff|diff|concat)");
}

std::string_view table_label(EdgeVariant v) {
  switch (v) {
    case EdgeVariant::NeighborOnly:
      return "x_j^{t-1}";
    case EdgeVariant::AbsDiff:
      return "|x_i^t - x_j^{t-1}|";
    case EdgeVariant::Diff:
      return "x_i^t - x_j^{t-1}";
    case EdgeVariant::ConcatPair:
      return "[x_i^t, x_j^{t-1}]";
  }
  return "?";
}

Eigen::Index edge_dim_for(EdgeVariant v, Eigen::Index node_dim) {
  return v == EdgeVariant::ConcatPair ? 2 * node_dim : node_dim;
}

PairGraph::PairGraph(Eigen::Index n, Eigen::Index m, nn::Matrix edges)
    : n_(n), m_(m), edges_(std::move(edges)) {
  if (edges_.rows() != n * m) {
    throw ConfigError("PairGraph: edge rows do not equal n * m");
  }
}

PairGraph build_graph(const nn::Matrix& curr, const nn::Matrix& prev, EdgeVariant variant) {
  const Eigen::Index n = curr.rows();
  const Eigen::Index m = prev.rows();
  if (n > 0 && m > 0 && curr.cols() != prev.cols()) {
    throw InvalidInput("build_graph: mixed feature dimensions");
  }
  const Eigen::Index f = n > 0 ? curr.cols() : prev.cols();
  PairGraph g(n, m, edge_dim_for(variant, f));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      auto e = g.edge(i, j);
      switch (variant) {
        case EdgeVariant::NeighborOnly:
          e = prev.row(j);
          break;
        case EdgeVariant::AbsDiff:
          e = (curr.row(i) - prev.row(j)).cwiseAbs();
          break;
        case EdgeVariant::Diff:
          e = curr.row(i) - prev.row(j);
          break;
        case EdgeVariant::ConcatPair:
          e.head(f) = curr.row(i);
          e.tail(f) = prev.row(j);
          break;
      }
    }
  }
  return g;
}

namespace {

nn::Matrix feature_matrix(const std::vector<Detection>& dets, Eigen::Index width) {
  nn::Matrix x(static_cast<Eigen::Index>(dets.size()), width);
  for (std::size_t r = 0; r < dets.size(); ++r) {
    if (static_cast<Eigen::Index>(dets[r].feature.size()) != width) {
      throw InvalidInput("build_graph: mixed feature dimensions");
    }
    for (Eigen::Index c = 0; c < width; ++c) {
      x(static_cast<Eigen::Index>(r), c) = dets[r].feature[static_cast<std::size_t>(c)];
    }
  }
  return x;
}

}  // namespace

PairGraph build_graph(const FramePair& pair, EdgeVariant variant) {
  Eigen::Index width = 0;
  if (!pair.curr.empty()) {
    width = static_cast<Eigen::Index>(pair.curr.front().feature.size());
  } else if (!pair.prev.empty()) {
    width = static_cast<Eigen::Index>(pair.prev.front().feature.size());
  }
  return build_graph(feature_matrix(pair.curr, width), feature_matrix(pair.prev, width), variant);
}

void build_graph_backward(const nn::Matrix& curr, const nn::Matrix& prev, EdgeVariant variant,
                          const nn::Matrix& d_edges, nn::Matrix& d_curr, nn::Matrix& d_prev) {
  const Eigen::Index n = curr.rows();
  const Eigen::Index m = prev.rows();
  const Eigen::Index f = curr.cols();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      auto de = d_edges.row(i * m + j);
      switch (variant) {
        case EdgeVariant::NeighborOnly:
          d_prev.row(j) += de;
          break;
        case EdgeVariant::AbsDiff: {
          // subgradient 0 at equality
          auto sign = (curr.row(i) - prev.row(j)).array().sign().matrix();
          d_curr.row(i) += de.cwiseProduct(sign);
          d_prev.row(j) -= de.cwiseProduct(sign);
          break;
        }
        case EdgeVariant::Diff:
          d_curr.row(i) += de;
          d_prev.row(j) -= de;
          break;
        case EdgeVariant::ConcatPair:
          d_curr.row(i) += de.head(f);
          d_prev.row(j) += de.tail(f);
          break;
      }
    }
  }
}

}  // namespace relmot
