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
#include <vector>

namespace relmot {

/// Min-cost flow by successive shortest augmenting paths with integer costs.
///
/// Arc costs may be negative as long as the initial network has no negative
/// cycle (true for the layered association network). Bellman-Ford is used for
/// the path search, so the augmenting path is the same on every run.
class MinCostFlow {
 public:
  explicit MinCostFlow(int nodes);

  /// Returns the arc index.
  int add_arc(int from, int to, std::int64_t capacity, std::int64_t cost);

  /// Augments from `source` to `sink` while the cheapest augmenting path has
  /// negative cost. The result is a minimum-cost flow over all flow values.
  /// Returns the total cost.
  std::int64_t min_cost_any_flow(int source, int sink);

  std::int64_t flow(int arc) const { return arcs_[static_cast<std::size_t>(2 * arc)].flow; }
  int node_count() const { return static_cast<int>(adjacency_.size()); }

 private:
  struct Arc {
    int to;
    std::int64_t capacity;
    std::int64_t cost;
    std::int64_t flow;
  };
  std::vector<Arc> arcs_;  // arc 2k forward, 2k+1 residual reverse
  std::vector<std::vector<int>> adjacency_;
};

}  // namespace relmot
