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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "relmot/config.hpp"
#include "relmot/core.hpp"

namespace relmot::cli {

/// Options shared by every command. Flags override the config file.
struct CommandOptions {
  std::optional<std::filesystem::path> config;
  std::optional<std::uint64_t> seed;  // sets sim.seed, model.seed and train.seed
  std::filesystem::path out = ".";
  std::optional<std::filesystem::path> model;
  std::optional<std::string> assoc;
  std::optional<std::string> edge;
  std::optional<std::string> fusion;
  std::optional<std::string> conv;
};

/// Defaults, then the config file, then flag overrides; validated.
RunConfig resolve_config(const CommandOptions& options);

/// World files: gt.txt, detections.txt (track id = true identity, -1 for
/// clutter), features.bin, matches.txt.
void cmd_simulate(const CommandOptions& options);

/// Tracks a detection file with its feature sidecar; writes results.txt.
void cmd_track(const CommandOptions& options, const std::filesystem::path& detections,
               const std::filesystem::path& features);

/// Scores results against ground truth; writes report.txt and report.kv.
void cmd_eval(const CommandOptions& options, const std::filesystem::path& gt,
              const std::filesystem::path& results);

/// Trains on simulated worlds; writes model.bin, loss.csv and loss.gp.
void cmd_train(const CommandOptions& options);

/// One table row per variant of `axis` (fusion | edge | conv | feature | assoc);
/// writes ablation.txt and ablation.csv.
void cmd_ablate(const CommandOptions& options, const std::string& axis);

/// Detections of a KITTI label file joined with their sidecar features, one
/// list per frame in file order. Throws IoError when a feature is missing.
std::vector<std::vector<Detection>> load_detections(const std::filesystem::path& labels,
                                                    const std::filesystem::path& features);

}  // namespace relmot::cli
