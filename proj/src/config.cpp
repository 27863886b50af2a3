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

#include "relmot/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <vector>

#include "relmot/error.hpp"

namespace relmot {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename Int>
Int parse_int(std::string_view v) {
  Int out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
    throw ConfigError("expected an integer, got '" + std::string(v) + "'");
  }
  return out;
}

double parse_real(std::string_view v) {
  const std::string s(v);
  char* end = nullptr;
  const double out = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(out)) {
    throw ConfigError("expected a finite number, got '" + s + "'");
  }
  return out;
}

bool parse_bool(std::string_view v) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw ConfigError("expected true or false, got '" + std::string(v) + "'");
}

std::vector<Eigen::Index> parse_widths(std::string_view v) {
  std::vector<Eigen::Index> out;
  while (!v.empty()) {
    const auto comma = v.find(',');
    out.push_back(parse_int<Eigen::Index>(trim(v.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    v.remove_prefix(comma + 1);
  }
  return out;
}

std::string format_real_exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_widths(const std::vector<Eigen::Index>& w) {
  std::string out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k > 0) out += ',';
    out += std::to_string(w[k]);
  }
  return out;
}

std::string_view loss_name(LossKind k) { return k == LossKind::Squared ? "squared" : "bce"; }

LossKind parse_loss(std::string_view s) {
  if (s == "bce") return LossKind::BinaryCrossEntropy;
  if (s == "squared") return LossKind::Squared;
  throw ConfigError("unknown loss '" + std::string(s) + "' (bce|squared)");
}

std::string_view space_name(metrics::MatchSpace s) {
  return s == metrics::MatchSpace::Center3D ? "center3d" : "iou2d";
}

metrics::MatchSpace parse_space(std::string_view s) {
  if (s == "iou2d") return metrics::MatchSpace::Iou2D;
  if (s == "center3d") return metrics::MatchSpace::Center3D;
  throw ConfigError("unknown match space '" + std::string(s) + "' (iou2d|center3d)");
}

struct Key {
  std::string name;
  std::string doc;
  std::function<std::string(const RunConfig&)> get;
  std::function<void(RunConfig&, std::string_view)> set;
};

#define RELMOT_INT_KEY(name, field, doc)                                               \
  Key {                                                                                \
    name, doc, [](const RunConfig& c) { return std::to_string(c.field); },             \
        [](RunConfig& c, std::string_view v) { c.field = parse_int<decltype(c.field)>(v); } \
  }
#define RELMOT_REAL_KEY(name, field, doc)                                          \
  Key {                                                                            \
    name, doc, [](const RunConfig& c) { return format_real_exact(c.field); },      \
        [](RunConfig& c, std::string_view v) { c.field = parse_real(v); }          \
  }
#define RELMOT_ENUM_KEY(name, field, doc, to_str, parse)                          \
  Key {                                                                           \
    name, doc, [](const RunConfig& c) { return std::string(to_str(c.field)); },   \
        [](RunConfig& c, std::string_view v) { c.field = parse(v); }              \
  }
#define RELMOT_WIDTHS_KEY(name, field, doc)                                        \
  Key {                                                                            \
    name, doc, [](const RunConfig& c) { return format_widths(c.field); },          \
        [](RunConfig& c, std::string_view v) { c.field = parse_widths(v); }        \
  }

const std::vector<Key>& keys() {
  static const std::vector<Key> table = {
      RELMOT_INT_KEY("sim.seed", sim.seed, "world seed; world k of a multi-world command uses seed + k"),
      RELMOT_INT_KEY("sim.n_objects", sim.n_objects, "objects alive at frame 0"),
      RELMOT_INT_KEY("sim.n_frames", sim.n_frames, "frames per world"),
      RELMOT_REAL_KEY("sim.x_min", sim.x_min, "lateral bound (m)"),
      RELMOT_REAL_KEY("sim.x_max", sim.x_max, "lateral bound (m)"),
      RELMOT_REAL_KEY("sim.z_min", sim.z_min, "depth bound (m), must exceed 1"),
      RELMOT_REAL_KEY("sim.z_max", sim.z_max, "depth bound (m)"),
      RELMOT_REAL_KEY("sim.speed_min", sim.speed_min, "object speed range (m/s)"),
      RELMOT_REAL_KEY("sim.speed_max", sim.speed_max, "object speed range (m/s)"),
      RELMOT_REAL_KEY("sim.frame_dt", sim.frame_dt, "seconds per frame"),
      RELMOT_REAL_KEY("sim.birth_prob", sim.birth_prob, "per-frame probability of one new object"),
      RELMOT_REAL_KEY("sim.death_prob", sim.death_prob, "per-frame, per-object termination probability"),
      RELMOT_REAL_KEY("sim.jitter_3d", sim.jitter_3d, "detection center noise sigma (m)"),
      RELMOT_REAL_KEY("sim.jitter_2d", sim.jitter_2d, "detection box center noise sigma (px)"),
      RELMOT_REAL_KEY("sim.fn_rate", sim.fn_rate, "probability a true object is not detected"),
      RELMOT_REAL_KEY("sim.fp_rate", sim.fp_rate, "per-object-slot probability of a clutter detection"),
      RELMOT_INT_KEY("sim.feature_dim", sim.feature_dim, "detection feature width; must equal model.app2d_dim + model.app3d_dim"),
      RELMOT_REAL_KEY("sim.embedding_noise", sim.embedding_noise, "per-frame feature noise sigma"),
      RELMOT_INT_KEY("model.app2d_dim", model.app2d_dim, "leading feature entries treated as 2D appearance"),
      RELMOT_INT_KEY("model.app3d_dim", model.app3d_dim, "trailing feature entries treated as 3D appearance"),
      RELMOT_INT_KEY("model.fused_dim", model.fused_dim, "fused appearance width"),
      RELMOT_WIDTHS_KEY("model.motion_hidden", model.motion_hidden, "motion MLP hidden widths, comma separated"),
      RELMOT_INT_KEY("model.motion_dim", model.motion_dim, "motion feature width; 0 disables the motion branch"),
      RELMOT_ENUM_KEY("model.fusion", model.fusion, "add | concat | wsum", to_string, parse_fusion_mode),
      RELMOT_ENUM_KEY("model.edge", model.edge, "neighbor | absdiff | diff | concat", to_string, parse_edge_variant),
      RELMOT_ENUM_KEY("model.interaction", model.interaction, "mlp | relation", to_string, parse_interaction),
      RELMOT_WIDTHS_KEY("model.filter_hidden", model.filter_hidden, "hidden widths of the edge filter MLP (empty: one layer)"),
      RELMOT_WIDTHS_KEY("model.head_hidden", model.head_hidden, "hidden widths of the four score heads (not given by the method; chosen here)"),
      RELMOT_INT_KEY("model.seed", model_seed, "parameter initialization seed"),
      RELMOT_INT_KEY("train.steps", train.steps, "gradient steps"),
      RELMOT_REAL_KEY("train.learning_rate", train.learning_rate, "step size; 0 leaves parameters untouched"),
      RELMOT_REAL_KEY("train.momentum", train.momentum, "heavy-ball momentum in [0, 1)"),
      RELMOT_INT_KEY("train.batch_size", train.batch_size, "frame pairs per step"),
      RELMOT_INT_KEY("train.seed", train.seed, "batch sampling seed"),
      RELMOT_ENUM_KEY("train.loss", train.loss, "bce | squared", loss_name, parse_loss),
      RELMOT_INT_KEY("train.worlds", train_worlds, "simulated worlds in the training set"),
      RELMOT_ENUM_KEY("tracker.backend", tracker.backend, "lp | hungarian | greedy", to_string, parse_assoc_backend),
      RELMOT_ENUM_KEY("tracker.scorer", scorer, "model | embedding (hand-set feature distance)", to_string, parse_scorer_kind),
      RELMOT_REAL_KEY("tracker.gate_distance", tracker.gate_distance, "3D gate (m per elapsed frame); 0 disables"),
      RELMOT_REAL_KEY("tracker.det_threshold", tracker.det_threshold, "validity cut for hungarian/greedy and LP prethreshold"),
      RELMOT_REAL_KEY("tracker.affinity_threshold", tracker.affinity_threshold, "minimum affinity for hungarian/greedy links"),
      RELMOT_REAL_KEY("tracker.score_offset", tracker.score_offset, "LP maximizes sum (score - offset); 0 maximizes raw confidence"),
      Key{"tracker.prethreshold", "LP: force detections scoring below 0.5 invalid",
          [](const RunConfig& c) { return std::string(c.tracker.prethreshold ? "true" : "false"); },
          [](RunConfig& c, std::string_view v) { c.tracker.prethreshold = parse_bool(v); }},
      RELMOT_INT_KEY("tracker.max_coast", tracker.max_coast, "frames an unmatched track is kept"),
      RELMOT_ENUM_KEY("metrics.space", metrics.space, "iou2d | center3d", space_name, parse_space),
      RELMOT_REAL_KEY("metrics.iou_threshold", metrics.iou_threshold, "iou2d: match when IoU >= threshold"),
      RELMOT_REAL_KEY("metrics.distance_threshold", metrics.distance_threshold, "center3d: match when distance <= threshold (m)"),
      RELMOT_INT_KEY("ablate.worlds", ablate_worlds, "worlds per ablation: the first trains, the rest evaluate"),
  };
  return table;
}

#undef RELMOT_INT_KEY
#undef RELMOT_REAL_KEY
#undef RELMOT_ENUM_KEY
#undef RELMOT_WIDTHS_KEY

const Key* find_key(std::string_view name) {
  for (const auto& k : keys()) {
    if (k.name == name) return &k;
  }
  return nullptr;
}

// Applies `text` to `config`; `prefix` restricts the accepted keys.
void apply(std::string_view text, RunConfig& config, std::string_view prefix) {
  std::set<std::string, std::less<>> seen;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "config line " + std::to_string(lineno) + ": ";
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where + "expected 'key = value'");
    const auto name = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    const Key* key = find_key(name);
    if (key == nullptr || !name.starts_with(prefix)) {
      throw ConfigError(where + "unknown key '" + std::string(name) + "'");
    }
    if (!seen.insert(std::string(name)).second) {
      throw ConfigError(where + "duplicate key '" + std::string(name) + "'");
    }
    try {
      key->set(config, value);
    } catch (const ConfigError& e) {
      throw ConfigError(where + key->name + ": " + e.what());
    }
  }
}

}  // namespace

std::string_view to_string(ScorerKind k) { return k == ScorerKind::Embedding ? "embedding" : "model"; }

ScorerKind parse_scorer_kind(std::string_view s) {
  if (s == "model") return ScorerKind::Model;
  if (s == "embedding") return ScorerKind::Embedding;
  throw ConfigError("unknown scorer '" + std::string(s) + "' (model|embedding)");
}

void RunConfig::validate() const {
  sim.validate();
  model.validate();
  tracker.validate();
  metrics.validate();
  if (sim.feature_dim != model.feature_dim()) {
    throw ConfigError("sim.feature_dim (" + std::to_string(sim.feature_dim) +
                      ") must equal model.app2d_dim + model.app3d_dim (" +
                      std::to_string(model.feature_dim()) + ")");
  }
  if (train.batch_size == 0) throw ConfigError("train.batch_size must be positive");
  if (!(train.learning_rate >= 0.0)) throw ConfigError("train.learning_rate must be nonnegative");
  if (!(train.momentum >= 0.0 && train.momentum < 1.0)) {
    throw ConfigError("train.momentum must lie in [0, 1)");
  }
  if (train_worlds < 1) throw ConfigError("train.worlds must be at least 1");
  if (ablate_worlds < 2) throw ConfigError("ablate.worlds must be at least 2");
}

RunConfig parse_config(std::string_view text, const RunConfig& base) {
  RunConfig config = base;
  apply(text, config, "");
  return config;
}

std::string format_config(const RunConfig& config) {
  std::string out;
  for (const auto& k : keys()) out += k.name + " = " + k.get(config) + '\n';
  return out;
}

std::string documented_defaults() {
  const RunConfig defaults;
  std::string out = "# relmot configuration: every key with its default value.\n";
  std::string section;
  for (const auto& k : keys()) {
    const std::string s = k.name.substr(0, k.name.find('.'));
    if (s != section) {
      out += '\n';
      section = s;
    }
    out += "# " + k.doc + '\n' + k.name + " = " + k.get(defaults) + '\n';
  }
  return out;
}

std::string format_model_config(const ModelConfig& config) {
  RunConfig c;
  c.model = config;
  std::string out;
  for (const auto& k : keys()) {
    if (k.name.starts_with("model.") && k.name != "model.seed") out += k.name + " = " + k.get(c) + '\n';
  }
  return out;
}

ModelConfig parse_model_config(std::string_view text) {
  RunConfig c;
  apply(text, c, "model.");
  c.model.validate();
  return c.model;
}

}  // namespace relmot
