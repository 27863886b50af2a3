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

#include <random>
#include <vector>

#include "relmot/assoc.hpp"
#include "relmot/core.hpp"
#include "relmot/relnet.hpp"

namespace relmot::testing {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline nn::Matrix random_matrix(std::mt19937_64& rng, Eigen::Index r, Eigen::Index c,
                                double scale = 1.0) {
  nn::Matrix m(r, c);
  for (Eigen::Index k = 0; k < m.size(); ++k) m.data()[k] = uniform(rng, -scale, scale);
  return m;
}

inline Detection random_detection(std::mt19937_64& rng, std::int64_t frame, Eigen::Index dim) {
  Detection d;
  d.frame_index = frame;
  d.box2d = Box2D{uniform(rng, 100, 1100), uniform(rng, 100, 300), uniform(rng, 20, 120),
                  uniform(rng, 20, 90)};
  d.box3d = Box3D{uniform(rng, -15, 15), uniform(rng, 0.5, 1.0), uniform(rng, 8, 50),
                  uniform(rng, 1.4, 1.8), uniform(rng, 1.3, 1.7), uniform(rng, 3.5, 4.5),
                  uniform(rng, -3.1, 3.1)};
  d.feature.resize(static_cast<std::size_t>(dim));
  for (auto& v : d.feature) v = uniform(rng, -1, 1);
  d.det_score = uniform(rng, 0, 1);
  return d;
}

inline FramePair random_pair(std::mt19937_64& rng, int m, int n, Eigen::Index dim) {
  FramePair p;
  for (int j = 0; j < m; ++j) p.prev.push_back(random_detection(rng, 4, dim));
  for (int i = 0; i < n; ++i) p.curr.push_back(random_detection(rng, 5, dim));
  return p;
}

inline ScoreSet random_scores(std::mt19937_64& rng, int m, int n) {
  auto unit = [&](Eigen::Index r, Eigen::Index c) {
    nn::Matrix x(r, c);
    for (Eigen::Index k = 0; k < x.size(); ++k) x.data()[k] = uniform(rng, 0, 1);
    return x;
  };
  ScoreSet s;
  s.det_prev = unit(m, 1).col(0);
  s.det_curr = unit(n, 1).col(0);
  s.affinity = unit(n, m);
  s.start = unit(m, 1).col(0);
  s.end = unit(n, 1).col(0);
  return s;
}

inline AssocProblem random_problem(std::mt19937_64& rng, int m, int n) {
  AssocProblem p;
  p.scores = random_scores(rng, m, n);
  return p;
}

}  // namespace relmot::testing
