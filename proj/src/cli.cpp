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

#include "relmot/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <memory>
#include <numeric>
#include <utility>

#include <Eigen/Core>

#include "relmot/error.hpp"
#include "relmot/kitti.hpp"
#include "relmot/metrics.hpp"
#include "relmot/model_io.hpp"
#include "relmot/sim.hpp"
#include "relmot/tracker.hpp"
#include "relmot/train.hpp"

#ifndef RELMOT_VERSION
#define RELMOT_VERSION "unknown"
#endif

namespace relmot::cli {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// FNV-1a; identifies file contents in manifests.
std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

/// Collects a run's outputs; everything except timing.txt is a function of
/// the manifest inputs.
class Run {
 public:
  Run(std::string command, const CommandOptions& options, RunConfig config)
      : command_(std::move(command)), out_(options.out), config_(std::move(config)),
        start_(Clock::now()) {}

  const RunConfig& config() const { return config_; }

  void input(const std::string& role, const fs::path& path) {
    inputs_.emplace_back(role, path.string() + " fnv1a64=" + hex64(fnv1a(io::read_file(path))));
  }

  void write(const std::string& name, const std::string& contents) {
    io::write_file_atomic(out_ / name, contents);
    outputs_.emplace_back(name, "bytes=" + std::to_string(contents.size()) +
                                    " fnv1a64=" + hex64(fnv1a(contents)));
  }

  void time(const std::string& what, double seconds) { timings_.emplace_back(what, seconds); }
  void note(const std::string& line) { timing_notes_ += line + '\n'; }

  /// Writes manifest.txt and timing.txt; call once, after every output.
  void finish() {
    std::string m = "# relmot run manifest\n";
    m += "command = " + command_ + '\n';
    m += "version.relmot = " RELMOT_VERSION "\n";
    m += "version.eigen = " + std::to_string(EIGEN_WORLD_VERSION) + '.' +
         std::to_string(EIGEN_MAJOR_VERSION) + '.' + std::to_string(EIGEN_MINOR_VERSION) + '\n';
    m += "seed = " + std::to_string(config_.sim.seed) + '\n';
    for (const auto& [role, desc] : inputs_) m += "input." + role + " = " + desc + '\n';
    for (const auto& [name, desc] : outputs_) m += "output." + name + " = " + desc + '\n';
    m += "timing = timing.txt\n";
    m += "\n# configuration snapshot\n" + format_config(config_);
    io::write_file_atomic(out_ / "manifest.txt", m);

    std::string t = "# wall times in seconds; not covered by the manifest\n";
    for (const auto& [what, s] : timings_) t += what + " = " + fmt("%.6f", s) + '\n';
    t += timing_notes_;
    t += "total = " + fmt("%.6f", seconds_since(start_)) + '\n';
    io::write_file_atomic(out_ / "timing.txt", t);
  }

 private:
  std::string command_;
  fs::path out_;
  RunConfig config_;
  Clock::time_point start_;
  std::vector<std::pair<std::string, std::string>> inputs_;
  std::vector<std::pair<std::string, std::string>> outputs_;
  std::vector<std::pair<std::string, double>> timings_;
  std::string timing_notes_;
};

sim::SimWorld world(const RunConfig& config, int k) {
  sim::SimConfig sc = config.sim;
  sc.seed = config.sim.seed + static_cast<std::uint64_t>(k);
  return sim::generate(sc);
}

std::string labels_text(const std::vector<std::vector<LabeledBox>>& frames, bool with_score,
                        const std::vector<std::vector<std::int64_t>>* ids = nullptr,
                        const std::vector<std::vector<Detection>>* dets = nullptr) {
  std::vector<io::KittiRow> rows;
  for (std::size_t t = 0; t < frames.size(); ++t) {
    for (const auto& b : frames[t]) rows.push_back(io::to_row(b, "Car", with_score));
  }
  if (dets != nullptr) {
    for (std::size_t t = 0; t < dets->size(); ++t) {
      for (std::size_t i = 0; i < (*dets)[t].size(); ++i) {
        const Detection& d = (*dets)[t][i];
        const LabeledBox b{d.frame_index, (*ids)[t][i], d.box2d, d.box3d, d.det_score};
        rows.push_back(io::to_row(b, "Car", true));
      }
    }
  }
  return io::write_labels(rows);
}

std::unique_ptr<PairScorer> make_scorer(const RunConfig& config, const CommandOptions& options,
                                        Run* run, Eigen::Index feature_dim) {
  if (config.scorer == ScorerKind::Embedding) return std::make_unique<EmbeddingScorer>();
  if (!options.model) {
    throw ConfigError("tracker.scorer = model needs --model (or set tracker.scorer = embedding)");
  }
  if (run != nullptr) run->input("model", *options.model);
  Model model = io::load_model(*options.model);
  if (feature_dim >= 0 && model.config.feature_dim() != feature_dim) {
    throw ConfigError("model expects features of width " +
                      std::to_string(model.config.feature_dim()) + ", the sidecar has " +
                      std::to_string(feature_dim));
  }
  return std::make_unique<ModelScorer>(std::move(model));
}

TrainResult train_on_worlds(const RunConfig& config, int first_world, int n_worlds) {
  std::vector<TrainingSample> samples;
  for (int k = first_world; k < first_world + n_worlds; ++k) {
    auto s = sim::training_samples(world(config, k));
    std::move(s.begin(), s.end(), std::back_inserter(samples));
  }
  return train(Model::create(config.model, config.model_seed), samples, config.train);
}

std::string loss_csv(const std::vector<double>& curve) {
  std::string out = "step,loss\n";
  for (std::size_t k = 0; k < curve.size(); ++k) {
    out += std::to_string(k) + ',' + fmt("%.17g", curve[k]) + '\n';
  }
  return out;
}

const char* kGnuplot =
    "# gnuplot -p loss.gp\n"
    "set datafile separator ','\n"
    "set xlabel 'step'\n"
    "set ylabel 'loss'\n"
    "set logscale y\n"
    "plot 'loss.csv' using 1:2 skip 1 with lines title 'training loss'\n";

}  // namespace

RunConfig resolve_config(const CommandOptions& options) {
  RunConfig config;
  if (options.config) config = parse_config(io::read_file(*options.config));
  if (options.seed) {
    config.sim.seed = *options.seed;
    config.model_seed = *options.seed;
    config.train.seed = *options.seed;
  }
  if (options.assoc) config.tracker.backend = parse_assoc_backend(*options.assoc);
  if (options.edge) config.model.edge = parse_edge_variant(*options.edge);
  if (options.fusion) config.model.fusion = parse_fusion_mode(*options.fusion);
  if (options.conv) config.model.interaction = parse_interaction(*options.conv);
  config.validate();
  return config;
}

std::vector<std::vector<Detection>> load_detections(const fs::path& labels,
                                                    const fs::path& features) {
  const auto rows = io::parse_labels(io::read_file(labels));
  if (!fs::exists(features)) {
    throw IoError("feature sidecar '" + features.string() + "' does not exist");
  }
  std::uint32_t dim = 0;
  const auto records = io::decode_features(io::read_file(features), &dim);
  std::map<std::pair<std::uint32_t, std::uint32_t>, const std::vector<double>*> by_key;
  for (const auto& r : records) by_key[{r.frame, r.index}] = &r.values;

  std::int64_t frames = 0;
  for (const auto& r : rows) frames = std::max(frames, r.frame + 1);
  std::vector<std::vector<Detection>> out(static_cast<std::size_t>(frames));
  for (const auto& r : rows) {
    if (r.dont_care()) continue;
    auto& list = out[static_cast<std::size_t>(r.frame)];
    const auto key = std::make_pair(static_cast<std::uint32_t>(r.frame),
                                    static_cast<std::uint32_t>(list.size()));
    const auto it = by_key.find(key);
    if (it == by_key.end()) {
      throw IoError("no sidecar feature for frame " + std::to_string(key.first) + ", detection " +
                    std::to_string(key.second));
    }
    const LabeledBox b = io::to_labeled_box(r);
    Detection d;
    d.frame_index = r.frame;
    d.box2d = b.box2d;
    d.box3d = b.box3d;
    d.feature = *it->second;
    d.det_score = std::clamp(r.score.value_or(1.0), 0.0, 1.0);
    list.push_back(std::move(d));
  }
  return out;
}

void cmd_simulate(const CommandOptions& options) {
  Run run("simulate", options, resolve_config(options));
  const auto t0 = Clock::now();
  const sim::SimWorld w = world(run.config(), 0);
  run.time("generate", seconds_since(t0));

  std::vector<io::FeatureRecord> features;
  std::string matches = "# frame prev_index curr_index (links between frames t-1 and t)\n";
  for (int t = 0; t < w.n_frames(); ++t) {
    const auto& dets = w.detections[static_cast<std::size_t>(t)];
    for (std::size_t i = 0; i < dets.size(); ++i) {
      features.push_back({static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(i), dets[i].feature});
    }
    const auto labels = sim::label_pairs(w, t);
    for (const auto& mt : sim::labels_to_association(labels).matches) {
      matches += std::to_string(t) + ' ' + std::to_string(mt.prev) + ' ' + std::to_string(mt.curr) + '\n';
    }
  }
  const std::vector<std::vector<LabeledBox>> none(0);
  run.write("gt.txt", labels_text(w.gt_frames, false));
  run.write("detections.txt", labels_text(none, true, &w.detection_ids, &w.detections));
  run.write("features.bin",
            io::encode_features(static_cast<std::uint32_t>(w.config.feature_dim), features));
  run.write("matches.txt", matches);
  run.finish();
}

void cmd_track(const CommandOptions& options, const fs::path& detections,
               const fs::path& features) {
  Run run("track", options, resolve_config(options));
  run.input("detections", detections);
  run.input("features", features);
  const auto frames = load_detections(detections, features);
  Eigen::Index dim = -1;
  for (const auto& f : frames) {
    if (!f.empty()) {
      dim = static_cast<Eigen::Index>(f.front().feature.size());
      break;
    }
  }
  const auto scorer = make_scorer(run.config(), options, &run, dim);
  const SequenceResult result = run_sequence(frames, *scorer, run.config().tracker);

  std::vector<std::vector<std::int64_t>> kept_ids;
  std::vector<std::vector<Detection>> kept;
  for (std::size_t t = 0; t < frames.size(); ++t) {
    kept.emplace_back();
    kept_ids.emplace_back();
    for (std::size_t i = 0; i < frames[t].size(); ++i) {
      if (result.ids[t][i] == 0) continue;
      kept.back().push_back(frames[t][i]);
      kept_ids.back().push_back(result.ids[t][i]);
    }
  }
  const std::vector<std::vector<LabeledBox>> none(0);
  run.write("results.txt", labels_text(none, true, &kept_ids, &kept));

  auto secs = result.frame_seconds;
  const double total = std::accumulate(secs.begin(), secs.end(), 0.0);
  run.time("track", total);
  if (!secs.empty()) {
    std::sort(secs.begin(), secs.end());
    run.note("frames = " + std::to_string(secs.size()));
    run.note("frame.mean = " + fmt("%.6f", total / static_cast<double>(secs.size())));
    run.note("frame.median = " + fmt("%.6f", secs[secs.size() / 2]));
    run.note("frame.max = " + fmt("%.6f", secs.back()));
  }
  for (std::size_t t = 0; t < result.frame_seconds.size(); ++t) {
    run.note("frame." + std::to_string(t) + " = " + fmt("%.6f", result.frame_seconds[t]));
  }
  run.finish();
}

void cmd_eval(const CommandOptions& options, const fs::path& gt, const fs::path& results) {
  Run run("eval", options, resolve_config(options));
  run.input("gt", gt);
  run.input("results", results);
  const auto gt_rows = io::parse_labels(io::read_file(gt));
  const auto hyp_rows = io::parse_labels(io::read_file(results));
  std::int64_t frames = 0;
  for (const auto& r : gt_rows) frames = std::max(frames, r.frame + 1);
  for (const auto& r : hyp_rows) frames = std::max(frames, r.frame + 1);
  const auto g = io::group_by_frame(gt_rows, frames);
  const auto h = io::group_by_frame(hyp_rows, frames);
  const auto t0 = Clock::now();
  const auto rep = metrics::evaluate(g, h, run.config().metrics);
  run.time("evaluate", seconds_since(t0));
  run.write("report.txt", metrics::format_table({{results.filename().string(), rep}}));
  run.write("report.kv", metrics::format_key_values(rep));
  run.finish();
}

void cmd_train(const CommandOptions& options) {
  Run run("train", options, resolve_config(options));
  const auto t0 = Clock::now();
  const TrainResult result = train_on_worlds(run.config(), 0, run.config().train_worlds);
  run.time("train", seconds_since(t0));
  run.write("model.bin", io::encode_model(result.model));
  run.write("loss.csv", loss_csv(result.loss_curve));
  run.write("loss.gp", kGnuplot);
  run.finish();
}

void cmd_ablate(const CommandOptions& options, const std::string& axis) {
  const RunConfig base = resolve_config(options);
  Run run("ablate " + axis, options, base);

  struct Variant {
    std::string label;
    RunConfig config;
  };
  std::vector<Variant> variants;
  auto add = [&](std::string label, auto&& edit) {
    RunConfig c = base;
    edit(c);
    c.validate();
    variants.push_back({std::move(label), std::move(c)});
  };
  if (axis == "fusion") {
    add("add", [](RunConfig& c) { c.model.fusion = FusionMode::Add; });
    add("concatenate", [](RunConfig& c) { c.model.fusion = FusionMode::Concat; });
    add("weighted sum", [](RunConfig& c) { c.model.fusion = FusionMode::WeightedSum; });
  } else if (axis == "edge") {
    for (auto v : {EdgeVariant::NeighborOnly, EdgeVariant::AbsDiff, EdgeVariant::Diff,
                   EdgeVariant::ConcatPair}) {
      add(std::string(table_label(v)), [v](RunConfig& c) { c.model.edge = v; });
    }
  } else if (axis == "conv") {
    for (auto k : {InteractionKind::Mlp, InteractionKind::RelationConv}) {
      add(std::string(table_label(k)), [k](RunConfig& c) { c.model.interaction = k; });
    }
  } else if (axis == "feature") {
    add("A", [](RunConfig& c) {
      c.model.motion_dim = 0;
      c.model.motion_hidden.clear();
    });
    add("A + M", [](RunConfig&) {});
  } else if (axis == "assoc") {
    add("LP (min-cost flow)", [](RunConfig& c) { c.tracker.backend = AssocBackend::Lp; });
    add("Hungarian", [](RunConfig& c) { c.tracker.backend = AssocBackend::Hungarian; });
    add("Greedy", [](RunConfig& c) { c.tracker.backend = AssocBackend::Greedy; });
  } else {
    throw ConfigError("unknown ablation axis '" + axis + "' (fusion|edge|conv|feature|assoc)");
  }

  std::vector<sim::SimWorld> eval_worlds;
  for (int k = 1; k < base.ablate_worlds; ++k) eval_worlds.push_back(world(base, k));

  // The assoc axis shares one model; the others retrain per variant.
  std::optional<Model> shared;
  std::vector<std::pair<std::string, metrics::MotReport>> rows;
  std::string csv = "variant,MOTA,MOTP,ID-SW,Frag,MT,ML\n";
  for (const auto& v : variants) {
    const auto t0 = Clock::now();
    std::unique_ptr<PairScorer> scorer;
    if (v.config.scorer == ScorerKind::Embedding) {
      scorer = std::make_unique<EmbeddingScorer>();
    } else if (axis == "assoc") {
      if (!shared) shared = train_on_worlds(v.config, 0, 1).model;
      scorer = std::make_unique<ModelScorer>(*shared);
    } else {
      scorer = std::make_unique<ModelScorer>(train_on_worlds(v.config, 0, 1).model);
    }
    metrics::MotAccumulator total(v.config.metrics);
    for (const auto& w : eval_worlds) {
      const auto result = run_sequence(w.detections, *scorer, v.config.tracker);
      metrics::MotAccumulator acc(v.config.metrics);
      const auto hyp = to_hypotheses(w.detections, result.ids);
      for (std::size_t t = 0; t < hyp.size(); ++t) acc.update(w.gt_frames[t], hyp[t]);
      total.merge(acc);
    }
    const auto rep = metrics::report(total);
    rows.emplace_back(v.label, rep);
    auto pct = [](const std::optional<double>& x) { return x ? fmt("%.4f", 100.0 * *x) : std::string("nan"); };
    csv += '"' + v.label + "\"," + pct(rep.mota) + ',' + pct(rep.motp) + ',' +
           std::to_string(rep.id_switches) + ',' + std::to_string(rep.fragmentations) + ',' +
           fmt("%.4f", rep.mt) + ',' + fmt("%.4f", rep.ml) + '\n';
    run.time("variant." + v.label, seconds_since(t0));
  }
  const std::string first_column = axis == "fusion" ? "Fusion method"
                                   : axis == "edge" ? "Edge Feature"
                                   : axis == "feature" ? "Feature"
                                   : axis == "assoc" ? "Association"
                                                     : "Method";
  run.write("ablation.txt", metrics::format_table(rows, first_column));
  run.write("ablation.csv", csv);
  run.finish();
}

}  // namespace relmot::cli
