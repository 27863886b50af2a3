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

#include <random>

#include "relmot/error.hpp"
#include "relmot/graph.hpp"
#include "test_util.hpp"

namespace relmot {
namespace {

nn::Matrix rows(std::initializer_list<std::initializer_list<double>> r) {
  nn::Matrix m(static_cast<Eigen::Index>(r.size()), static_cast<Eigen::Index>(r.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : r) {
    Eigen::Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

constexpr EdgeVariant kAll[] = {EdgeVariant::NeighborOnly, EdgeVariant::AbsDiff, EdgeVariant::Diff,
                                EdgeVariant::ConcatPair};

TEST(BuildGraph, HandExamples) {
  const auto g = build_graph(rows({{3, 1}}), rows({{1, 4}}), EdgeVariant::AbsDiff);
  EXPECT_EQ(g.edge(0, 0), rows({{2, 3}}));
  const auto z = build_graph(rows({{3, 1}}), rows({{3, 1}}), EdgeVariant::AbsDiff);
  EXPECT_EQ(z.edge(0, 0), rows({{0, 0}}));
  const auto c = build_graph(rows({{1}}), rows({{2}}), EdgeVariant::ConcatPair);
  EXPECT_EQ(c.edge_dim(), 2);
  EXPECT_EQ(c.edge(0, 0), rows({{1, 2}}));
  const auto nb = build_graph(rows({{1}}), rows({{2}}), EdgeVariant::NeighborOnly);
  EXPECT_EQ(nb.edge(0, 0), rows({{2}}));
  const auto d = build_graph(rows({{1}}), rows({{2}}), EdgeVariant::Diff);
  EXPECT_EQ(d.edge(0, 0), rows({{-1}}));
}

TEST(BuildGraph, ShapeForEveryCountIncludingZero) {
  std::mt19937_64 rng(1);
  for (auto v : kAll) {
    for (int n = 0; n <= 3; ++n) {
      for (int m = 0; m <= 3; ++m) {
        const auto g = build_graph(testing::random_matrix(rng, n, 4), testing::random_matrix(rng, m, 4), v);
        EXPECT_EQ(g.n(), n);
        EXPECT_EQ(g.m(), m);
        EXPECT_EQ(g.edge_dim(), edge_dim_for(v, 4));
        EXPECT_EQ(g.edges().rows(), n * m);
      }
    }
  }
}

TEST(BuildGraph, EdgeLayoutFollowsDefinition) {
  std::mt19937_64 rng(3);
  const nn::Matrix curr = testing::random_matrix(rng, 3, 5);
  const nn::Matrix prev = testing::random_matrix(rng, 4, 5);
  for (auto v : kAll) {
    const auto g = build_graph(curr, prev, v);
    for (Eigen::Index i = 0; i < 3; ++i) {
      for (Eigen::Index j = 0; j < 4; ++j) {
        nn::Matrix want;
        switch (v) {
          case EdgeVariant::NeighborOnly: want = prev.row(j); break;
          case EdgeVariant::AbsDiff: want = (curr.row(i) - prev.row(j)).cwiseAbs(); break;
          case EdgeVariant::Diff: want = curr.row(i) - prev.row(j); break;
          case EdgeVariant::ConcatPair:
            want.resize(1, 10);
            want << curr.row(i), prev.row(j);
            break;
        }
        EXPECT_EQ(nn::Matrix(g.edge(i, j)), want);
      }
    }
  }
}

TEST(BuildGraph, SymmetryAndAntisymmetry) {
  std::mt19937_64 rng(5);
  const nn::Matrix x = testing::random_matrix(rng, 1, 6);
  const nn::Matrix y = testing::random_matrix(rng, 1, 6);
  EXPECT_EQ(nn::Matrix(build_graph(x, y, EdgeVariant::AbsDiff).edges()),
            nn::Matrix(build_graph(y, x, EdgeVariant::AbsDiff).edges()));
  EXPECT_EQ(nn::Matrix(build_graph(x, y, EdgeVariant::Diff).edges()),
            nn::Matrix(-build_graph(y, x, EdgeVariant::Diff).edges()));
}

TEST(BuildGraph, TranslationInvariance) {
  // Integer-valued features keep the shifted differences exact.
  std::mt19937_64 rng(7);
  nn::Matrix curr(3, 4), prev(2, 4);
  for (Eigen::Index k = 0; k < curr.size(); ++k) curr.data()[k] = testing::uniform_int(rng, -9, 9);
  for (Eigen::Index k = 0; k < prev.size(); ++k) prev.data()[k] = testing::uniform_int(rng, -9, 9);
  const Eigen::RowVectorXd shift = (nn::Matrix(1, 4) << 3, -2, 5, 1).finished();
  const nn::Matrix cs = curr.rowwise() + shift;
  const nn::Matrix ps = prev.rowwise() + shift;
  for (auto v : kAll) {
    const bool invariant = v == EdgeVariant::AbsDiff || v == EdgeVariant::Diff;
    EXPECT_EQ(build_graph(curr, prev, v) == build_graph(cs, ps, v), invariant) << to_string(v);
  }
}

TEST(BuildGraph, MixedWidthsAreInvalid) {
  std::mt19937_64 rng(9);
  EXPECT_THROW(build_graph(testing::random_matrix(rng, 2, 3), testing::random_matrix(rng, 2, 4),
                           EdgeVariant::AbsDiff),
               InvalidInput);
  FramePair p = testing::random_pair(rng, 2, 2, 3);
  p.prev[0].feature.pop_back();
  EXPECT_THROW(build_graph(p, EdgeVariant::AbsDiff), InvalidInput);
}

TEST(EdgeVariant, NamesAndLabels) {
  for (auto v : kAll) EXPECT_EQ(parse_edge_variant(to_string(v)), v);
  EXPECT_EQ(table_label(EdgeVariant::AbsDiff), "|x_i^t - x_j^{t-1}|");
  EXPECT_THROW(parse_edge_variant("sum"), ConfigError);
}

}  // namespace
}  // namespace relmot
