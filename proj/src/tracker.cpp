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

#include "relmot/tracker.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "relmot/error.hpp"

namespace relmot {
namespace {

constexpr double kBlocked = 1e6;

// Completes a matching into a flow-consistent association: unmatched valid
// previous nodes start, unmatched valid current nodes end.
Association complete(const std::vector<Match>& matches, std::vector<bool> valid_prev,
                     std::vector<bool> valid_curr) {
  Association a;
  a.matches = matches;
  std::sort(a.matches.begin(), a.matches.end());
  std::vector<bool> prev_linked(valid_prev.size(), false), curr_linked(valid_curr.size(), false);
  for (const auto& mt : a.matches) {
    prev_linked[static_cast<std::size_t>(mt.prev)] = true;
    curr_linked[static_cast<std::size_t>(mt.curr)] = true;
  }
  for (std::size_t j = 0; j < valid_prev.size(); ++j) {
    if (valid_prev[j] && !prev_linked[j]) a.starts.push_back(static_cast<int>(j));
  }
  for (std::size_t i = 0; i < valid_curr.size(); ++i) {
    if (valid_curr[i] && !curr_linked[i]) a.ends.push_back(static_cast<int>(i));
  }
  a.valid_prev = std::move(valid_prev);
  a.valid_curr = std::move(valid_curr);
  return a;
}

std::vector<bool> threshold_det(const nn::Vector& det, double cut) {
  std::vector<bool> v(static_cast<std::size_t>(det.size()));
  for (Eigen::Index k = 0; k < det.size(); ++k) v[static_cast<std::size_t>(k)] = det(k) >= cut;
  return v;
}

Association associate(const AssocProblem& problem, const TrackerConfig& config) {
  if (config.backend == AssocBackend::Lp) return solve(problem);

  const ScoreSet& s = problem.scores;
  auto valid_prev = threshold_det(s.det_prev, config.det_threshold);
  auto valid_curr = threshold_det(s.det_curr, config.det_threshold);
  GateMask allowed = GateMask::Constant(s.n(), s.m(), true);
  for (Eigen::Index i = 0; i < s.n(); ++i) {
    for (Eigen::Index j = 0; j < s.m(); ++j) {
      allowed(i, j) = problem.is_allowed(i, j) && valid_curr[static_cast<std::size_t>(i)] &&
                      valid_prev[static_cast<std::size_t>(j)];
    }
  }

  std::vector<Match> matches;
  if (config.backend == AssocBackend::Greedy) {
    matches = greedy(s.affinity, config.affinity_threshold, allowed);
  } else {
    nn::Matrix cost = nn::Matrix::Constant(s.n(), s.m(), kBlocked);
    for (Eigen::Index i = 0; i < s.n(); ++i) {
      for (Eigen::Index j = 0; j < s.m(); ++j) {
        if (allowed(i, j)) cost(i, j) = 1.0 - s.affinity(i, j);
      }
    }
    for (const auto& as : hungarian(cost, 1.0 - config.affinity_threshold)) {
      matches.push_back({as.col, as.row});
    }
  }
  Association a = complete(matches, std::move(valid_prev), std::move(valid_curr));
  a.objective = objective_value(problem, a.indicator());
  return a;
}

}  // namespace

ScoreSet ModelScorer::score(const FramePair& pair) const { return forward(model_, pair); }

ScoreSet EmbeddingScorer::score(const FramePair& pair) const {
  validate(pair);
  const auto m = static_cast<Eigen::Index>(pair.m());
  const auto n = static_cast<Eigen::Index>(pair.n());
  ScoreSet s;
  s.det_prev.resize(m);
  s.det_curr.resize(n);
  s.affinity.resize(n, m);
  s.start = nn::Vector::Constant(m, 0.5);
  s.end = nn::Vector::Constant(n, 0.5);
  for (Eigen::Index j = 0; j < m; ++j) s.det_prev(j) = pair.prev[static_cast<std::size_t>(j)].det_score;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& xi = pair.curr[static_cast<std::size_t>(i)].feature;
    s.det_curr(i) = pair.curr[static_cast<std::size_t>(i)].det_score;
    for (Eigen::Index j = 0; j < m; ++j) {
      const auto& xj = pair.prev[static_cast<std::size_t>(j)].feature;
      double d2 = 0.0;
      for (std::size_t k = 0; k < xi.size(); ++k) d2 += (xi[k] - xj[k]) * (xi[k] - xj[k]);
      const double scale = 0.5 * static_cast<double>(std::max<std::size_t>(xi.size(), 1));
      s.affinity(i, j) = std::exp(-d2 / scale);
    }
  }
  return s;
}

std::string_view to_string(AssocBackend b) {
  switch (b) {
    case AssocBackend::Lp: return "lp";
    case AssocBackend::Hungarian: return "hungarian";
    case AssocBackend::Greedy: return "greedy";
  }
  return "lp";
}

AssocBackend parse_assoc_backend(std::string_view s) {
  if (s == "lp") return AssocBackend::Lp;
  if (s == "hungarian") return AssocBackend::Hungarian;
  if (s == "greedy") return AssocBackend::Greedy;
  throw ConfigError("unknown association backend '" + std::string(s) + "' (lp|hungarian|greedy)");
}

void TrackerConfig::validate() const {
  auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!unit(det_threshold) || !unit(affinity_threshold) || !unit(score_offset)) {
    throw ConfigError("tracker: thresholds and score offset must lie in [0, 1]");
  }
  if (!(gate_distance >= 0.0)) throw ConfigError("tracker: gate distance must be nonnegative");
  if (max_coast < 0) throw ConfigError("tracker: max_coast must be nonnegative");
}

StepResult step(const TrackState& state, const std::vector<Detection>& curr,
                const PairScorer& scorer, const TrackerConfig& config) {
  config.validate();
  // Coasted tracks enter as ordinary previous nodes sharing one frame index.
  std::int64_t prev_frame = 0;
  for (const auto& tr : state.tracks) prev_frame = std::max(prev_frame, tr.last.frame_index);
  FramePair pair;
  pair.curr = curr;
  for (const auto& tr : state.tracks) {
    pair.prev.push_back(tr.last);
    pair.prev.back().frame_index = prev_frame;
  }

  AssocProblem problem;
  problem.scores = scorer.score(pair);
  problem.score_offset = config.score_offset;
  problem.prethreshold = config.prethreshold;
  if (config.gate_distance > 0.0) {
    problem.allowed = GateMask(static_cast<Eigen::Index>(curr.size()),
                               static_cast<Eigen::Index>(state.tracks.size()));
    for (std::size_t j = 0; j < state.tracks.size(); ++j) {
      const double reach = config.gate_distance * (1.0 + state.tracks[j].misses);
      for (std::size_t i = 0; i < curr.size(); ++i) {
        problem.allowed(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            center_distance_3d(curr[i].box3d, state.tracks[j].last.box3d) <= reach;
      }
    }
  }

  StepResult out;
  out.association = associate(problem, config);
  const Association& a = out.association;

  out.ids.assign(curr.size(), 0);
  std::vector<int> matched_curr(state.tracks.size(), -1);
  for (const auto& mt : a.matches) matched_curr[static_cast<std::size_t>(mt.prev)] = mt.curr;

  TrackState& next = out.state;
  next.next_id = state.next_id;
  for (std::size_t j = 0; j < state.tracks.size(); ++j) {
    Track tr = state.tracks[j];
    ++tr.age;
    if (matched_curr[j] >= 0) {
      const auto i = static_cast<std::size_t>(matched_curr[j]);
      tr.last = curr[i];
      tr.misses = 0;
      out.ids[i] = tr.id.value;
    } else if (++tr.misses > config.max_coast) {
      continue;
    }
    next.tracks.push_back(std::move(tr));
  }
  for (std::size_t i = 0; i < curr.size(); ++i) {
    if (out.ids[i] != 0 || !a.valid_curr[i]) continue;
    const TrackId id{next.next_id++};
    out.ids[i] = id.value;
    next.tracks.push_back(Track{id, curr[i], 0, 0});
  }
  return out;
}

SequenceResult run_sequence(const std::vector<std::vector<Detection>>& frames,
                            const PairScorer& scorer, const TrackerConfig& config) {
  SequenceResult out;
  TrackState state;
  for (const auto& frame : frames) {
    const auto t0 = std::chrono::steady_clock::now();
    StepResult r = step(state, frame, scorer, config);
    out.frame_seconds.push_back(
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    state = std::move(r.state);
    out.ids.push_back(std::move(r.ids));
  }
  return out;
}

std::vector<std::vector<LabeledBox>> to_hypotheses(
    const std::vector<std::vector<Detection>>& frames,
    const std::vector<std::vector<std::int64_t>>& ids) {
  if (frames.size() != ids.size()) throw InvalidInput("to_hypotheses: frame count mismatch");
  std::vector<std::vector<LabeledBox>> out(frames.size());
  for (std::size_t t = 0; t < frames.size(); ++t) {
    if (frames[t].size() != ids[t].size()) throw InvalidInput("to_hypotheses: id count mismatch");
    for (std::size_t i = 0; i < frames[t].size(); ++i) {
      if (ids[t][i] == 0) continue;
      const Detection& d = frames[t][i];
      out[t].push_back(LabeledBox{d.frame_index, ids[t][i], d.box2d, d.box3d, d.det_score});
    }
  }
  return out;
}

}  // namespace relmot
