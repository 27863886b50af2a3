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

#include "relmot/metrics.hpp"
#include "relmot/relnet.hpp"
#include "relmot/sim.hpp"
#include "relmot/tracker.hpp"
#include "relmot/train.hpp"

namespace relmot {

enum class ScorerKind { Model, Embedding };

std::string_view to_string(ScorerKind k);
ScorerKind parse_scorer_kind(std::string_view s);  // model | embedding

/// Everything a command needs, read from a flat `key = value` file.
struct RunConfig {
  sim::SimConfig sim;
  ModelConfig model;
  std::uint64_t model_seed = 1;
  TrainConfig train;
  int train_worlds = 1;  // simulated worlds used for training
  TrackerConfig tracker;
  ScorerKind scorer = ScorerKind::Model;
  metrics::MetricsConfig metrics;
  int ablate_worlds = 3;  // world 0 trains, the rest evaluate

  /// Per-section checks plus cross-section consistency.
  void validate() const;
};

/// Parses `key = value` lines over `base`. '#' starts a comment; blank lines
/// are ignored. Unknown keys, duplicates and malformed values throw
/// ConfigError naming the line.
RunConfig parse_config(std::string_view text, const RunConfig& base = RunConfig{});

/// Every key with its current value, one per line, in a fixed order.
std::string format_config(const RunConfig& config);

/// format_config of the defaults, each key preceded by its documentation.
std::string documented_defaults();

/// Only the model.* keys; used inside model files.
std::string format_model_config(const ModelConfig& config);
ModelConfig parse_model_config(std::string_view text);

}  // namespace relmot
