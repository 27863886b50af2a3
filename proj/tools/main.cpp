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

#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "relmot/cli.hpp"
#include "relmot/config.hpp"

namespace {

void add_common(CLI::App* cmd, relmot::cli::CommandOptions& o) {
  cmd->add_option("--config", o.config, "key = value configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.seed, "seed for simulation, initialization and batching");
  cmd->add_option("--out", o.out, "output directory")->capture_default_str();
  cmd->add_option("--model", o.model, "model file written by 'train'");
  cmd->add_option("--assoc", o.assoc, "association backend")
      ->check(CLI::IsMember({"lp", "hungarian", "greedy"}));
  cmd->add_option("--edge", o.edge, "edge feature")
      ->check(CLI::IsMember({"neighbor", "absdiff", "diff", "concat"}));
  cmd->add_option("--fusion", o.fusion, "appearance fusion")
      ->check(CLI::IsMember({"add", "concat", "wsum"}));
  cmd->add_option("--conv", o.conv, "edge interaction")->check(CLI::IsMember({"mlp", "relation"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relmot: graph-based multi-object tracking data association"};
  app.require_subcommand(1);

  relmot::cli::CommandOptions opts;
  std::string detections, features, gt, results, axis;

  auto* simulate = app.add_subcommand("simulate", "generate a synthetic world");
  add_common(simulate, opts);

  auto* track = app.add_subcommand("track", "track a detection file");
  add_common(track, opts);
  track->add_option("--detections", detections, "KITTI-format detections")->required();
  track->add_option("--features", features, "feature sidecar of the detections")->required();

  auto* eval = app.add_subcommand("eval", "CLEAR MOT evaluation");
  add_common(eval, opts);
  eval->add_option("--gt", gt, "ground-truth labels")->required();
  eval->add_option("--results", results, "tracker results")->required();

  auto* train = app.add_subcommand("train", "train a model on simulated worlds");
  add_common(train, opts);

  auto* ablate = app.add_subcommand("ablate", "compare variants along one axis");
  add_common(ablate, opts);
  ablate->add_option("--axis", axis, "variant axis")
      ->required()
      ->check(CLI::IsMember({"fusion", "edge", "conv", "feature", "assoc"}));

  auto* defaults = app.add_subcommand("defaults", "print every configuration key with its default");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) relmot::cli::cmd_simulate(opts);
    if (*track) relmot::cli::cmd_track(opts, detections, features);
    if (*eval) relmot::cli::cmd_eval(opts, gt, results);
    if (*train) relmot::cli::cmd_train(opts);
    if (*ablate) relmot::cli::cmd_ablate(opts, axis);
    if (*defaults) std::cout << relmot::documented_defaults();
  } catch (const std::exception& e) {
    std::cerr << "relmot: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
