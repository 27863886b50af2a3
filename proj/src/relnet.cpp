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

#include "relmot/relnet.hpp"

#include <array>
#include <cmath>
#include <random>

#include "relmot/error.hpp"

namespace relmot {
namespace {

constexpr std::array<double, kMotionCueSize> kMotionScale = {100.0, 100.0, 100.0, 100.0,
                                                             10.0,  10.0,  10.0,  1.0,
                                                             1.0,   1.0,   1.0};

void check_width(const nn::Mlp& mlp, Eigen::Index in, Eigen::Index out, const char* what) {
  if (mlp.empty() || mlp.in_dim() != in || mlp.out_dim() != out) {
    throw ConfigError(std::string(what) + ": layer widths do not match the edge width");
  }
}

nn::Vector sigmoid_all(const nn::Matrix& logits) {
  return logits.col(0).unaryExpr([](double z) { return nn::sigmoid(z); });
}

// Interaction forward with the caches needed for backward.
struct InteractionCache {
  nn::MlpCache mlp;
  nn::Matrix pre;  // output of the shared MLP before the rectifier
};

nn::Matrix interaction_forward(InteractionKind kind, const nn::Mlp& mlp, const nn::Matrix& e,
                               InteractionCache* cache) {
  nn::Matrix h = mlp.forward(e, cache != nullptr ? &cache->mlp : nullptr);
  nn::Matrix out = kind == InteractionKind::RelationConv ? nn::Matrix(nn::relu(h).cwiseProduct(e))
                                                         : nn::relu(h);
  if (cache != nullptr) {
    cache->pre = std::move(h);
  }
  return out;
}

nn::Matrix interaction_backward(InteractionKind kind, const nn::Mlp& mlp, const nn::Matrix& e,
                                const InteractionCache& cache, const nn::Matrix& dout,
                                nn::Mlp& grad) {
  const nn::Matrix active = (cache.pre.array() > 0.0).cast<double>().matrix();
  if (kind == InteractionKind::RelationConv) {
    nn::Matrix de = nn::relu(cache.pre).cwiseProduct(dout);
    nn::Matrix dh = e.cwiseProduct(dout).cwiseProduct(active);
    de += mlp.backward(cache.mlp, dh, grad);
    return de;
  }
  return mlp.backward(cache.mlp, dout.cwiseProduct(active), grad);
}

nn::Matrix pool_current(const nn::Matrix& edges, Eigen::Index n, Eigen::Index m) {
  nn::Matrix pooled = nn::Matrix::Zero(m, edges.cols());
  if (n == 0) {
    return pooled;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    pooled += edges.middleRows(i * m, m);
  }
  return pooled / static_cast<double>(n);
}

nn::Matrix pool_previous(const nn::Matrix& edges, Eigen::Index n, Eigen::Index m) {
  nn::Matrix pooled = nn::Matrix::Zero(n, edges.cols());
  if (m == 0) {
    return pooled;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    pooled.row(i) = edges.middleRows(i * m, m).colwise().sum() / static_cast<double>(m);
  }
  return pooled;
}

void append_blocks(const std::string& prefix, nn::Linear& l, const ParamVisitor& fn) {
  fn(prefix + ".weight", l.weight);
  fn(prefix + ".bias", l.bias);
}

void append_blocks(const std::string& prefix, nn::Mlp& mlp, const ParamVisitor& fn) {
  for (std::size_t k = 0; k < mlp.layers.size(); ++k) {
    append_blocks(prefix + "." + std::to_string(k), mlp.layers[k], fn);
  }
}

}  // namespace

PairGraph relation_conv(const PairGraph& g, const RelationConvLayer& layer) {
  check_width(layer.filter_mlp, g.edge_dim(), g.edge_dim(), "relation_conv");
  return PairGraph(g.n(), g.m(),
                   interaction_forward(InteractionKind::RelationConv, layer.filter_mlp, g.edges(),
                                       nullptr));
}

PairGraph mlp_interact(const PairGraph& g, const nn::Mlp& params) {
  check_width(params, g.edge_dim(), g.edge_dim(), "mlp_interact");
  return PairGraph(g.n(), g.m(),
                   interaction_forward(InteractionKind::Mlp, params, g.edges(), nullptr));
}

std::string_view to_string(InteractionKind k) {
  return k == InteractionKind::Mlp ? "mlp" : "relation";
}

InteractionKind parse_interaction(std::string_view s) {
  if (s == "mlp") return InteractionKind::Mlp;
  if (s == "relation") return InteractionKind::RelationConv;
  throw ConfigError("unknown interaction '" + std::string(s) + "' (mlp|relation)");
}

std::string_view table_label(InteractionKind k) {
  return k == InteractionKind::Mlp ? "MLP" : "RelationConv";
}

void ScoreSet::validate() const {
  const auto n = det_curr.size();
  const auto m = det_prev.size();
  if (affinity.rows() != n || affinity.cols() != m || start.size() != m || end.size() != n) {
    throw InvalidInput("ScoreSet: inconsistent shapes");
  }
  auto in_unit = [](const auto& x) {
    return x.size() == 0 || (x.allFinite() && x.minCoeff() >= 0.0 && x.maxCoeff() <= 1.0);
  };
  if (!in_unit(det_prev) || !in_unit(det_curr) || !in_unit(affinity) || !in_unit(start) ||
      !in_unit(end)) {
    throw InvalidInput("ScoreSet: scores must be finite and in [0, 1]");
  }
}

nn::Matrix pool_over_current(const PairGraph& g) { return pool_current(g.edges(), g.n(), g.m()); }

nn::Matrix pool_over_previous(const PairGraph& g) {
  return pool_previous(g.edges(), g.n(), g.m());
}

ScoreSet score(const nn::Matrix& curr_nodes, const nn::Matrix& prev_nodes, const PairGraph& g_out,
               const ScoreHeads& heads) {
  const auto n = g_out.n();
  const auto m = g_out.m();
  if (curr_nodes.rows() != n || prev_nodes.rows() != m) {
    throw ConfigError("score: node counts do not match the graph");
  }
  ScoreSet s;
  const nn::Vector aff = sigmoid_all(heads.affinity.forward(g_out.edges()));
  s.affinity = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      aff.data(), n, m);
  s.det_prev = sigmoid_all(heads.det.forward(prev_nodes));
  s.det_curr = sigmoid_all(heads.det.forward(curr_nodes));
  s.start = sigmoid_all(heads.start.forward(pool_over_current(g_out)));
  s.end = sigmoid_all(heads.end.forward(pool_over_previous(g_out)));
  return s;
}

ScoreSet score(const FramePair& pair, const PairGraph& g_out, const ScoreHeads& heads) {
  auto to_matrix = [](const std::vector<Detection>& dets, Eigen::Index width) {
    nn::Matrix x(static_cast<Eigen::Index>(dets.size()), width);
    for (std::size_t r = 0; r < dets.size(); ++r) {
      if (static_cast<Eigen::Index>(dets[r].feature.size()) != width) {
        throw ConfigError("score: detection feature width does not match the det head");
      }
      x.row(static_cast<Eigen::Index>(r)) =
          Eigen::Map<const nn::Vector>(dets[r].feature.data(), width).transpose();
    }
    return x;
  };
  const auto width = heads.det.in_dim();
  return score(to_matrix(pair.curr, width), to_matrix(pair.prev, width), g_out, heads);
}

void ModelConfig::validate() const {
  if (app2d_dim <= 0 || app3d_dim <= 0 || fused_dim <= 0 || motion_dim < 0) {
    throw ConfigError("ModelConfig: widths must be positive (motion_dim may be 0)");
  }
  for (auto w : motion_hidden) {
    if (w <= 0) throw ConfigError("ModelConfig: motion_hidden widths must be positive");
  }
  for (auto w : filter_hidden) {
    if (w <= 0) throw ConfigError("ModelConfig: filter_hidden widths must be positive");
  }
  for (auto w : head_hidden) {
    if (w <= 0) throw ConfigError("ModelConfig: head_hidden widths must be positive");
  }
}

nn::Vector normalized_motion_cue(const Detection& d) {
  const MotionCue cue = motion_cue(d.box2d, d.box3d);
  nn::Vector v(static_cast<Eigen::Index>(kMotionCueSize));
  for (std::size_t k = 0; k < kMotionCueSize; ++k) {
    v(static_cast<Eigen::Index>(k)) = cue[k] / kMotionScale[k];
  }
  return v;
}

Model Model::create(const ModelConfig& config, std::uint64_t seed) {
  config.validate();
  Model model;
  model.config = config;
  model.fusion = FusionParams(config.app2d_dim, config.app3d_dim, config.fused_dim);
  if (config.motion_dim > 0) {
    std::vector<Eigen::Index> widths{static_cast<Eigen::Index>(kMotionCueSize)};
    widths.insert(widths.end(), config.motion_hidden.begin(), config.motion_hidden.end());
    widths.push_back(config.motion_dim);
    model.motion = nn::Mlp(widths);
  }
  const auto e = config.edge_dim();
  auto chain = [](Eigen::Index in, const std::vector<Eigen::Index>& hidden, Eigen::Index out) {
    std::vector<Eigen::Index> widths{in};
    widths.insert(widths.end(), hidden.begin(), hidden.end());
    widths.push_back(out);
    return nn::Mlp(widths);
  };
  model.interaction = chain(e, config.filter_hidden, e);
  model.heads.affinity = chain(e, config.head_hidden, 1);
  model.heads.det = chain(config.node_dim(), config.head_hidden, 1);
  model.heads.start = chain(e, config.head_hidden, 1);
  model.heads.end = chain(e, config.head_hidden, 1);

  std::mt19937_64 rng(seed);
  for (nn::Linear* l : {&model.fusion.proj2d, &model.fusion.proj3d, &model.fusion.concat_proj,
                        &model.fusion.gate2d, &model.fusion.gate3d}) {
    l->glorot_init(rng);
  }
  model.motion.glorot_init(rng);
  model.interaction.glorot_init(rng);
  model.heads.affinity.glorot_init(rng);
  model.heads.det.glorot_init(rng);
  model.heads.start.glorot_init(rng);
  model.heads.end.glorot_init(rng);
  return model;
}

Model Model::zeros_like() const {
  Model z = *this;
  for_each_parameter(z, [](const std::string&, Eigen::Ref<nn::Matrix> block) { block.setZero(); });
  return z;
}

std::size_t Model::parameter_count() const {
  std::size_t count = 0;
  for_each_parameter(*this, [&](const std::string&, Eigen::Ref<const nn::Matrix> block) {
    count += static_cast<std::size_t>(block.size());
  });
  return count;
}

void for_each_parameter(Model& model, const ParamVisitor& fn) {
  append_blocks("fusion.proj2d", model.fusion.proj2d, fn);
  append_blocks("fusion.proj3d", model.fusion.proj3d, fn);
  append_blocks("fusion.concat_proj", model.fusion.concat_proj, fn);
  append_blocks("fusion.gate2d", model.fusion.gate2d, fn);
  append_blocks("fusion.gate3d", model.fusion.gate3d, fn);
  append_blocks("motion", model.motion, fn);
  append_blocks("interaction", model.interaction, fn);
  append_blocks("head.affinity", model.heads.affinity, fn);
  append_blocks("head.det", model.heads.det, fn);
  append_blocks("head.start", model.heads.start, fn);
  append_blocks("head.end", model.heads.end, fn);
}

void for_each_parameter(const Model& model, const ConstParamVisitor& fn) {
  // The mutable visitor never writes through the references it hands out here.
  for_each_parameter(const_cast<Model&>(model),
                     [&](const std::string& name, Eigen::Ref<nn::Matrix> block) { fn(name, block); });
}

namespace {

struct NodeCache {
  FusionCache fusion;
  nn::MlpCache motion;
};

nn::Matrix node_features_impl(const Model& model, const std::vector<Detection>& dets,
                              NodeCache* cache) {
  const auto& cfg = model.config;
  const auto rows = static_cast<Eigen::Index>(dets.size());
  nn::Matrix f2d(rows, cfg.app2d_dim);
  nn::Matrix f3d(rows, cfg.app3d_dim);
  nn::Matrix cues(rows, static_cast<Eigen::Index>(kMotionCueSize));
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& d = dets[static_cast<std::size_t>(r)];
    validate(d);
    if (static_cast<Eigen::Index>(d.feature.size()) != cfg.feature_dim()) {
      throw InvalidInput("detection feature width " + std::to_string(d.feature.size()) +
                         " does not match the model (" + std::to_string(cfg.feature_dim()) + ")");
    }
    const Eigen::Map<const nn::Vector> f(d.feature.data(), cfg.feature_dim());
    f2d.row(r) = f.head(cfg.app2d_dim).transpose();
    f3d.row(r) = f.tail(cfg.app3d_dim).transpose();
    cues.row(r) = normalized_motion_cue(d).transpose();
  }
  nn::Matrix x(rows, cfg.node_dim());
  x.leftCols(cfg.fused_dim) = fuse_appearance_batch(f2d, f3d, cfg.fusion, model.fusion,
                                                    cache != nullptr ? &cache->fusion : nullptr);
  if (cfg.motion_dim > 0) {
    x.rightCols(cfg.motion_dim) =
        model.motion.forward(cues, cache != nullptr ? &cache->motion : nullptr);
  }
  return x;
}

std::vector<Detection> stacked(const FramePair& pair) {
  std::vector<Detection> all = pair.prev;
  all.insert(all.end(), pair.curr.begin(), pair.curr.end());
  return all;
}

// d loss / d logit for one family, with its mean normalization.
double family_term(double z, double y, LossKind kind, double inv_count, double* dz) {
  const double p = nn::sigmoid(z);
  if (kind == LossKind::BinaryCrossEntropy) {
    *dz = (p - y) * inv_count;
    return (nn::softplus(z) - y * z) * inv_count;
  }
  *dz = 2.0 * (p - y) * p * (1.0 - p) * inv_count;
  return (p - y) * (p - y) * inv_count;
}

double family_loss(const nn::Matrix& logits, const nn::Vector& targets, LossKind kind,
                   nn::Matrix* dlogits) {
  const auto count = logits.rows();
  dlogits->setZero(count, 1);
  if (count == 0) {
    return 0.0;
  }
  const double inv = 1.0 / static_cast<double>(count);
  double loss = 0.0;
  for (Eigen::Index r = 0; r < count; ++r) {
    double dz = 0.0;
    loss += family_term(logits(r, 0), targets(r), kind, inv, &dz);
    (*dlogits)(r, 0) = dz;
  }
  return loss;
}

}  // namespace

nn::Matrix node_features(const Model& model, const std::vector<Detection>& dets) {
  return node_features_impl(model, dets, nullptr);
}

ScoreSet forward(const Model& model, const FramePair& pair) {
  const auto m = static_cast<Eigen::Index>(pair.m());
  const auto n = static_cast<Eigen::Index>(pair.n());
  const nn::Matrix x = node_features(model, stacked(pair));
  const nn::Matrix prev = x.topRows(m);
  const nn::Matrix curr = x.bottomRows(n);
  const PairGraph g = build_graph(curr, prev, model.config.edge);
  const PairGraph out(n, m,
                      interaction_forward(model.config.interaction, model.interaction, g.edges(),
                                          nullptr));
  return score(curr, prev, out, model.heads);
}

double loss_and_grad(const Model& model, const FramePair& pair, const PairLabels& labels,
                     LossKind kind, Model* grad) {
  const auto& cfg = model.config;
  const auto m = static_cast<Eigen::Index>(pair.m());
  const auto n = static_cast<Eigen::Index>(pair.n());
  if (labels.det_prev.size() != m || labels.det_curr.size() != n ||
      labels.affinity.rows() != n || labels.affinity.cols() != m || labels.start.size() != m ||
      labels.end.size() != n) {
    throw ConfigError("loss_and_grad: label shapes do not match the frame pair");
  }

  // Forward with caches.
  NodeCache node_cache;
  const nn::Matrix x = node_features_impl(model, stacked(pair), &node_cache);
  const nn::Matrix prev = x.topRows(m);
  const nn::Matrix curr = x.bottomRows(n);
  const PairGraph g = build_graph(curr, prev, cfg.edge);
  InteractionCache inter_cache;
  const nn::Matrix out = interaction_forward(cfg.interaction, model.interaction, g.edges(),
                                             &inter_cache);
  nn::MlpCache aff_cache, det_cache, start_cache, end_cache;
  const nn::Matrix aff_logits = model.heads.affinity.forward(out, &aff_cache);
  const nn::Matrix det_logits = model.heads.det.forward(x, &det_cache);
  const nn::Matrix start_pool = pool_current(out, n, m);
  const nn::Matrix end_pool = pool_previous(out, n, m);
  const nn::Matrix start_logits = model.heads.start.forward(start_pool, &start_cache);
  const nn::Matrix end_logits = model.heads.end.forward(end_pool, &end_cache);

  // Targets flattened in the same row order as the logits.
  nn::Vector aff_targets(n * m);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      aff_targets(i * m + j) = labels.affinity(i, j);
    }
  }
  nn::Vector det_targets(m + n);
  det_targets << labels.det_prev, labels.det_curr;

  nn::Matrix d_aff, d_det, d_start, d_end;
  double loss = family_loss(aff_logits, aff_targets, kind, &d_aff);
  loss += family_loss(det_logits, det_targets, kind, &d_det);
  loss += family_loss(start_logits, labels.start, kind, &d_start);
  loss += family_loss(end_logits, labels.end, kind, &d_end);
  if (grad == nullptr) {
    return loss;
  }

  // Backward.
  nn::Matrix d_out = model.heads.affinity.backward(aff_cache, d_aff, grad->heads.affinity);
  const nn::Matrix d_start_pool =
      model.heads.start.backward(start_cache, d_start, grad->heads.start);
  const nn::Matrix d_end_pool = model.heads.end.backward(end_cache, d_end, grad->heads.end);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      d_out.row(i * m + j) += d_start_pool.row(j) / static_cast<double>(n) +
                              d_end_pool.row(i) / static_cast<double>(m);
    }
  }
  const nn::Matrix d_edges = interaction_backward(cfg.interaction, model.interaction, g.edges(),
                                                  inter_cache, d_out, grad->interaction);
  nn::Matrix d_curr = nn::Matrix::Zero(n, cfg.node_dim());
  nn::Matrix d_prev = nn::Matrix::Zero(m, cfg.node_dim());
  build_graph_backward(curr, prev, cfg.edge, d_edges, d_curr, d_prev);

  nn::Matrix d_x = model.heads.det.backward(det_cache, d_det, grad->heads.det);
  d_x.topRows(m) += d_prev;
  d_x.bottomRows(n) += d_curr;

  fuse_appearance_backward(node_cache.fusion, d_x.leftCols(cfg.fused_dim), cfg.fusion,
                           model.fusion, grad->fusion);
  if (cfg.motion_dim > 0) {
    model.motion.backward(node_cache.motion, d_x.rightCols(cfg.motion_dim), grad->motion);
  }
  return loss;
}

}  // namespace relmot
