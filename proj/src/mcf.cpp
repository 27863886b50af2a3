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

#include "relmot/mcf.hpp"

#include <algorithm>
#include <limits>

#include "relmot/error.hpp"

namespace relmot {

MinCostFlow::MinCostFlow(int nodes) : adjacency_(static_cast<std::size_t>(nodes)) {}

int MinCostFlow::add_arc(int from, int to, std::int64_t capacity, std::int64_t cost) {
  if (from < 0 || to < 0 || from >= node_count() || to >= node_count()) {
    throw ConfigError("MinCostFlow: arc endpoint out of range");
  }
  const int id = static_cast<int>(arcs_.size() / 2);
  adjacency_[static_cast<std::size_t>(from)].push_back(static_cast<int>(arcs_.size()));
  arcs_.push_back({to, capacity, cost, 0});
  adjacency_[static_cast<std::size_t>(to)].push_back(static_cast<int>(arcs_.size()));
  arcs_.push_back({from, 0, -cost, 0});
  return id;
}

std::int64_t MinCostFlow::min_cost_any_flow(int source, int sink) {
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  const auto n = adjacency_.size();
  std::int64_t total = 0;
  std::vector<std::int64_t> dist(n);
  std::vector<int> via(n);
  while (true) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(via.begin(), via.end(), -1);
    dist[static_cast<std::size_t>(source)] = 0;
    // Bellman-Ford over the residual network; at most n - 1 relaxation rounds.
    for (std::size_t round = 0; round + 1 < n; ++round) {
      bool changed = false;
      for (std::size_t u = 0; u < n; ++u) {
        if (dist[u] == kInf) continue;
        for (int a : adjacency_[u]) {
          const Arc& arc = arcs_[static_cast<std::size_t>(a)];
          if (arc.capacity - arc.flow <= 0) continue;
          const auto v = static_cast<std::size_t>(arc.to);
          if (dist[u] + arc.cost < dist[v]) {
            dist[v] = dist[u] + arc.cost;
            via[v] = a;
            changed = true;
          }
        }
      }
      if (!changed) break;
    }
    const auto t = static_cast<std::size_t>(sink);
    if (dist[t] == kInf || dist[t] >= 0) {
      return total;
    }
    std::int64_t push = kInf;
    for (auto v = t; v != static_cast<std::size_t>(source);) {
      const Arc& arc = arcs_[static_cast<std::size_t>(via[v])];
      push = std::min(push, arc.capacity - arc.flow);
      v = static_cast<std::size_t>(arcs_[static_cast<std::size_t>(via[v] ^ 1)].to);
    }
    for (auto v = t; v != static_cast<std::size_t>(source);) {
      const auto a = static_cast<std::size_t>(via[v]);
      arcs_[a].flow += push;
      arcs_[a ^ 1].flow -= push;
      v = static_cast<std::size_t>(arcs_[a ^ 1].to);
    }
    total += push * dist[t];
  }
}

}  // namespace relmot
