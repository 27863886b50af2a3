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
#include <memory>
#include <string_view>
#include <vector>

#include "relmot/assoc.hpp"
#include "relmot/core.hpp"
#include "relmot/relnet.hpp"

namespace relmot {

/// Produces the score set of a frame pair.
class PairScorer {
 public:
  virtual ~PairScorer() = default;
  virtual ScoreSet score(const FramePair& pair) const = 0;
};

/// Scores with a learned model.
class ModelScorer final : public PairScorer {
 public:
  explicit ModelScorer(Model model) : model_(std::move(model)) {}
  ScoreSet score(const FramePair& pair) const override;
  const Model& model() const { return model_; }

 private:
  Model model_;
};

/// Hand-set scorer on raw features: affinity exp(-|xi - xj|^2 / (0.5 F)),
/// det = detector score, start = end = 0.5. With noise-free identity
/// embeddings it is an oracle.
class EmbeddingScorer final : public PairScorer {
 public:
  ScoreSet score(const FramePair& pair) const override;
};

enum class AssocBackend { Lp, Hungarian, Greedy };

std::string_view to_string(AssocBackend b);
AssocBackend parse_assoc_backend(std::string_view s);  // lp | hungarian | greedy

struct TrackerConfig {
  AssocBackend backend = AssocBackend::Lp;
  double gate_distance = 0.0;       // meters per elapsed frame; 0 disables gating
  double det_threshold = 0.5;       // validity cut for hungarian / greedy (and LP prethreshold)
  double affinity_threshold = 0.5;  // minimum affinity for hungarian / greedy links
  double score_offset = 0.5;        // LP objective offset
  bool prethreshold = false;        // LP: fix det < det_threshold to invalid
  int max_coast = 2;                // frames a track survives unmatched

  void validate() const;
  bool operator==(const TrackerConfig&) const = default;
};

struct Track {
  TrackId id;
  Detection last;      // most recent matched detection
  int misses = 0;      // consecutive frames without a match
  std::int64_t age = 0;  // frames since birth
  bool operator==(const Track&) const = default;
};

struct TrackState {
  std::vector<Track> tracks;  // active, in creation order
  std::int64_t next_id = 1;
  bool operator==(const TrackState&) const = default;
};

struct StepResult {
  TrackState state;
  std::vector<std::int64_t> ids;  // per current detection; 0 for rejected detections
  Association association;
};

/// One online step: the active tracks' last detections form the previous
/// side, `curr` the current side.
StepResult step(const TrackState& state, const std::vector<Detection>& curr,
                const PairScorer& scorer, const TrackerConfig& config);

struct SequenceResult {
  std::vector<std::vector<std::int64_t>> ids;  // per frame, per detection
  std::vector<double> frame_seconds;           // wall time of each step
};

SequenceResult run_sequence(const std::vector<std::vector<Detection>>& frames,
                            const PairScorer& scorer, const TrackerConfig& config);

/// Accepted detections as identity-labelled boxes, one list per frame.
std::vector<std::vector<LabeledBox>> to_hypotheses(
    const std::vector<std::vector<Detection>>& frames,
    const std::vector<std::vector<std::int64_t>>& ids);

}  // namespace relmot
