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

#include "relmot/sim.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "relmot/error.hpp"

namespace relmot::sim {
namespace {

constexpr double kFocal = 721.5;
constexpr double kPrincipalU = 609.6;
constexpr double kPrincipalV = 172.9;
constexpr double kCameraHeight = 1.65;

struct Object {
  std::int64_t id;
  double x, z, vx, vz;
  double w, h, l;
  std::vector<double> embedding;
};

double heading(double vx, double vz) {
  if (vx == 0.0 && vz == 0.0) return 0.0;
  return std::atan2(vz, vx);
}

Box3D box_of(const Object& o) {
  return Box3D{o.x, kCameraHeight - 0.5 * o.h, o.z, o.w, o.h, o.l, heading(o.vx, o.vz)};
}

void reflect(double& pos, double& vel, double lo, double hi) {
  for (int guard = 0; guard < 8 && (pos < lo || pos > hi); ++guard) {
    if (pos < lo) {
      pos = 2.0 * lo - pos;
      vel = -vel;
    } else if (pos > hi) {
      pos = 2.0 * hi - pos;
      vel = -vel;
    }
  }
  pos = std::clamp(pos, lo, hi);
}

class Generator {
 public:
  explicit Generator(const SimConfig& c) : c_(c), rng_(c.seed) {}

  Object spawn(std::int64_t id) {
    std::uniform_real_distribution<double> ux(c_.x_min, c_.x_max), uz(c_.z_min, c_.z_max);
    std::uniform_real_distribution<double> speed(c_.speed_min, c_.speed_max);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    std::uniform_real_distribution<double> jitter(-0.15, 0.15);
    Object o;
    o.id = id;
    o.x = ux(rng_);
    o.z = uz(rng_);
    const double s = speed(rng_) * c_.frame_dt;
    const double a = angle(rng_);
    o.vx = s * std::cos(a);
    o.vz = s * std::sin(a);
    o.w = 1.6 + jitter(rng_);
    o.h = 1.5 + jitter(rng_);
    o.l = 3.9 + 2.0 * jitter(rng_);
    o.embedding = gaussian_vector(1.0);
    return o;
  }

  std::vector<double> gaussian_vector(double sigma) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> v(static_cast<std::size_t>(c_.feature_dim));
    for (auto& x : v) x = sigma * g(rng_);
    return v;
  }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double normal(double sigma) {
    return sigma == 0.0 ? 0.0 : std::normal_distribution<double>(0.0, sigma)(rng_);
  }
  bool bernoulli(double p) { return std::bernoulli_distribution(p)(rng_); }

 private:
  const SimConfig& c_;
  std::mt19937_64 rng_;
};

}  // namespace

void SimConfig::validate() const {
  auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (n_objects < 0 || n_frames < 0) throw ConfigError("sim: counts must be nonnegative");
  if (!(x_min < x_max) || !(z_min < z_max) || z_min <= 1.0) {
    throw ConfigError("sim: world bounds must be ordered and in front of the camera (z_min > 1)");
  }
  if (speed_min < 0.0 || speed_max < speed_min) throw ConfigError("sim: bad speed range");
  if (!(frame_dt > 0.0)) throw ConfigError("sim: frame_dt must be positive");
  if (!prob(birth_prob) || !prob(death_prob) || !prob(fn_rate) || !prob(fp_rate)) {
    throw ConfigError("sim: probabilities must lie in [0, 1]");
  }
  if (jitter_2d < 0.0 || jitter_3d < 0.0 || embedding_noise < 0.0) {
    throw ConfigError("sim: noise sigmas must be nonnegative");
  }
  if (feature_dim <= 0) throw ConfigError("sim: feature_dim must be positive");
}

Box2D project(const Box3D& b) {
  const double footprint = std::abs(b.w * std::sin(b.yaw)) + std::abs(b.l * std::cos(b.yaw));
  return Box2D{kFocal * b.cx / b.cz + kPrincipalU, kFocal * b.cy / b.cz + kPrincipalV,
               kFocal * std::max(footprint, 0.1) / b.cz, kFocal * b.h / b.cz};
}

SimWorld generate(const SimConfig& config) {
  config.validate();
  SimWorld world;
  world.config = config;
  Generator gen(config);
  std::int64_t next_id = 1;
  std::vector<Object> alive;
  for (int k = 0; k < config.n_objects; ++k) alive.push_back(gen.spawn(next_id++));
  std::map<std::int64_t, std::size_t> track_index;

  for (int t = 0; t < config.n_frames; ++t) {
    if (t > 0) {
      std::vector<Object> survivors;
      for (auto& o : alive) {
        if (config.death_prob > 0.0 && gen.bernoulli(config.death_prob)) continue;
        o.x += o.vx;
        o.z += o.vz;
        reflect(o.x, o.vx, config.x_min, config.x_max);
        reflect(o.z, o.vz, config.z_min, config.z_max);
        survivors.push_back(std::move(o));
      }
      alive = std::move(survivors);
      if (config.birth_prob > 0.0 && gen.bernoulli(config.birth_prob)) {
        alive.push_back(gen.spawn(next_id++));
      }
    }

    std::vector<LabeledBox> gt;
    std::vector<Detection> dets;
    std::vector<std::int64_t> ids;
    for (const auto& o : alive) {
      const Box3D b3 = box_of(o);
      const LabeledBox lb{t, o.id, project(b3), b3, 1.0};
      gt.push_back(lb);
      auto [it, inserted] = track_index.try_emplace(o.id, world.gt_tracks.size());
      if (inserted) world.gt_tracks.push_back(GtTrack{TrackId{o.id}, {}});
      world.gt_tracks[it->second].boxes.push_back(lb);

      if (config.fn_rate > 0.0 && gen.bernoulli(config.fn_rate)) continue;
      Detection d;
      d.frame_index = t;
      d.box3d = b3;
      d.box3d.cx += gen.normal(config.jitter_3d);
      d.box3d.cz += gen.normal(config.jitter_3d);
      d.box3d.cz = std::max(d.box3d.cz, 1.0);
      d.box2d = project(d.box3d);
      d.box2d.cx += gen.normal(config.jitter_2d);
      d.box2d.cy += gen.normal(config.jitter_2d);
      d.feature = o.embedding;
      if (config.embedding_noise > 0.0) {
        for (auto& v : d.feature) v += gen.normal(config.embedding_noise);
      }
      d.det_score = gen.uniform(0.6, 1.0);
      dets.push_back(std::move(d));
      ids.push_back(o.id);
    }
    for (int k = 0; k < config.n_objects; ++k) {
      if (!(config.fp_rate > 0.0 && gen.bernoulli(config.fp_rate))) continue;
      Detection d;
      d.frame_index = t;
      d.box3d = Box3D{gen.uniform(config.x_min, config.x_max), kCameraHeight - 0.75,
                      gen.uniform(config.z_min, config.z_max), 1.6, 1.5, 3.9,
                      gen.uniform(-std::numbers::pi, std::numbers::pi)};
      d.box2d = project(d.box3d);
      d.feature = gen.gaussian_vector(1.0);
      d.det_score = gen.uniform(0.05, 0.6);
      dets.push_back(std::move(d));
      ids.push_back(-1);
    }
    world.gt_frames.push_back(std::move(gt));
    world.detections.push_back(std::move(dets));
    world.detection_ids.push_back(std::move(ids));
  }
  return world;
}

FramePair frame_pair(const SimWorld& world, int t) {
  if (t < 0 || t >= world.n_frames()) throw ConfigError("frame_pair: frame out of range");
  FramePair pair;
  if (t > 0) pair.prev = world.detections[static_cast<std::size_t>(t - 1)];
  pair.curr = world.detections[static_cast<std::size_t>(t)];
  return pair;
}

PairLabels label_pairs(const SimWorld& world, int t) {
  if (t < 0 || t >= world.n_frames()) throw ConfigError("label_pairs: frame out of range");
  static const std::vector<std::int64_t> kNone;
  const auto& prev = t > 0 ? world.detection_ids[static_cast<std::size_t>(t - 1)] : kNone;
  const auto& curr = world.detection_ids[static_cast<std::size_t>(t)];
  const auto m = static_cast<Eigen::Index>(prev.size());
  const auto n = static_cast<Eigen::Index>(curr.size());
  PairLabels L;
  L.det_prev = nn::Vector::Zero(m);
  L.det_curr = nn::Vector::Zero(n);
  L.affinity = nn::Matrix::Zero(n, m);
  L.start = nn::Vector::Zero(m);
  L.end = nn::Vector::Zero(n);
  for (Eigen::Index j = 0; j < m; ++j) {
    const auto id = prev[static_cast<std::size_t>(j)];
    if (id < 0) continue;
    L.det_prev(j) = 1.0;
    const bool linked = std::find(curr.begin(), curr.end(), id) != curr.end();
    L.start(j) = linked ? 0.0 : 1.0;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto id = curr[static_cast<std::size_t>(i)];
    if (id < 0) continue;
    L.det_curr(i) = 1.0;
    bool linked = false;
    for (Eigen::Index j = 0; j < m; ++j) {
      if (prev[static_cast<std::size_t>(j)] == id) {
        L.affinity(i, j) = 1.0;
        linked = true;
      }
    }
    L.end(i) = linked ? 0.0 : 1.0;
  }
  return L;
}

Association labels_to_association(const PairLabels& labels) {
  Association a;
  const auto m = labels.det_prev.size();
  const auto n = labels.det_curr.size();
  for (Eigen::Index j = 0; j < m; ++j) {
    a.valid_prev.push_back(labels.det_prev(j) > 0.5);
    if (labels.start(j) > 0.5) a.starts.push_back(static_cast<int>(j));
    for (Eigen::Index i = 0; i < n; ++i) {
      if (labels.affinity(i, j) > 0.5) a.matches.push_back({static_cast<int>(j), static_cast<int>(i)});
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    a.valid_curr.push_back(labels.det_curr(i) > 0.5);
    if (labels.end(i) > 0.5) a.ends.push_back(static_cast<int>(i));
  }
  return a;
}

std::vector<TrainingSample> training_samples(const SimWorld& world, int first, int last) {
  if (last < 0 || last >= world.n_frames()) last = world.n_frames() - 1;
  std::vector<TrainingSample> out;
  for (int t = std::max(first, 0); t <= last; ++t) {
    out.push_back({frame_pair(world, t), label_pairs(world, t)});
  }
  return out;
}

}  // namespace relmot::sim
