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
#include <string>
#include <string_view>
#include <vector>

#include "relmot/core.hpp"
#include "relmot/relnet.hpp"

namespace relmot {

using GateMask = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// One association instance.
///
/// The binary decision vector S holds, in this order (the "flattened" order
/// used for tie-breaking and objective summation):
///   det_prev[0..M), det_curr[0..N), link[j][i] for j in [0, M), i in [0, N),
///   start[0..M), end[0..N).
/// Each variable is weighted by (score - score_offset) and the weighted sum is
/// maximized subject to
///   det_prev[j] = start[j] + sum_i link[j][i]
///   det_curr[i] = end[i]   + sum_j link[j][i].
struct AssocProblem {
  ScoreSet scores;
  GateMask allowed;           // N x M; empty means every pair is allowed
  double score_offset = 0.5;  // 0 maximizes raw confidence
  bool prethreshold = false;  // force detections with det score < 0.5 invalid

  Eigen::Index m() const { return scores.m(); }
  Eigen::Index n() const { return scores.n(); }
  bool is_allowed(Eigen::Index i, Eigen::Index j) const {
    return allowed.size() == 0 || allowed(i, j);
  }
  void validate() const;
};

/// Pairs whose 3D center distance exceeds `max_distance` are disallowed.
GateMask gate_by_distance(const std::vector<Detection>& prev, const std::vector<Detection>& curr,
                          double max_distance);

struct Match {
  int prev = 0;
  int curr = 0;
  auto operator<=>(const Match&) const = default;
};

struct Association {
  std::vector<Match> matches;  // sorted by (prev, curr)
  std::vector<int> starts;     // previous indices that start a trajectory
  std::vector<int> ends;       // current indices that end a trajectory
  std::vector<bool> valid_prev;
  std::vector<bool> valid_curr;
  double objective = 0.0;

  /// Flattened decision vector S (see AssocProblem).
  std::vector<std::uint8_t> indicator() const;
  static Association from_indicator(const std::vector<std::uint8_t>& s, int m, int n);

  bool operator==(const Association&) const = default;
};

/// Counts rows of the two conservation identities that fail (0 when feasible,
/// also counting duplicate use of a detection).
int flow_violations(const Association& a);

/// Sum of (score - offset) over the set variables, in flattened order.
double objective_value(const AssocProblem& p, const std::vector<std::uint8_t>& s);

/// Exact solver: min-cost flow by successive shortest paths. Among all optimal
/// vectors the lexicographically smallest one is returned.
Association solve(const AssocProblem& problem);

/// Exhaustive enumeration of every feasible S (guarded to N, M <= 6).
Association brute_force(const AssocProblem& problem);

struct Assignment {
  int row = 0;
  int col = 0;
  auto operator<=>(const Assignment&) const = default;
};

/// Minimum-cost rectangular assignment (Kuhn-Munkres with potentials). Pairs
/// whose cost exceeds `threshold` are dropped afterwards. Sorted by row.
std::vector<Assignment> hungarian(const nn::Matrix& cost, double threshold);

/// Repeatedly takes the highest remaining affinity (N x M, current x previous)
/// strictly above `threshold`; disallowed pairs are skipped.
std::vector<Match> greedy(const nn::Matrix& affinity, double threshold,
                          const GateMask& allowed = GateMask());

/// Text dump of a problem, one record per score, for golden tests.
std::string write_problem(const AssocProblem& p);
AssocProblem read_problem(std::string_view text);
std::string write_solution(const Association& a);

}  // namespace relmot
