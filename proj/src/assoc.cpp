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

#include "relmot/assoc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "relmot/error.hpp"
#include "relmot/mcf.hpp"

namespace relmot {
namespace {

// Scores are compared as fixed-point integers so that optimality and ties are
// decided exactly; 2^-32 resolution.
constexpr double kFixedPointScale = 4294967296.0;

// Flattened variable layout.
struct Layout {
  int m = 0;
  int n = 0;
  int det_prev(int j) const { return j; }
  int det_curr(int i) const { return m + i; }
  int link(int j, int i) const { return m + n + j * n + i; }
  int start(int j) const { return m + n + m * n + j; }
  int end(int i) const { return 2 * m + n + m * n + i; }
  int size() const { return 2 * (m + n) + m * n; }
};

Layout layout_of(const AssocProblem& p) {
  return Layout{static_cast<int>(p.m()), static_cast<int>(p.n())};
}

std::vector<double> flattened_scores(const AssocProblem& p) {
  const Layout L = layout_of(p);
  std::vector<double> s(static_cast<std::size_t>(L.size()));
  for (int j = 0; j < L.m; ++j) {
    s[static_cast<std::size_t>(L.det_prev(j))] = p.scores.det_prev(j);
    s[static_cast<std::size_t>(L.start(j))] = p.scores.start(j);
    for (int i = 0; i < L.n; ++i) {
      s[static_cast<std::size_t>(L.link(j, i))] = p.scores.affinity(i, j);
    }
  }
  for (int i = 0; i < L.n; ++i) {
    s[static_cast<std::size_t>(L.det_curr(i))] = p.scores.det_curr(i);
    s[static_cast<std::size_t>(L.end(i))] = p.scores.end(i);
  }
  return s;
}

std::vector<std::int64_t> fixed_point_weights(const AssocProblem& p) {
  std::vector<std::int64_t> w;
  for (double s : flattened_scores(p)) {
    w.push_back(std::llround((s - p.score_offset) * kFixedPointScale));
  }
  return w;
}

// -1 free, 0 forced off, 1 forced on.
std::vector<std::int8_t> initial_fixings(const AssocProblem& p) {
  const Layout L = layout_of(p);
  std::vector<std::int8_t> fix(static_cast<std::size_t>(L.size()), -1);
  for (int j = 0; j < L.m; ++j) {
    for (int i = 0; i < L.n; ++i) {
      if (!p.is_allowed(i, j)) fix[static_cast<std::size_t>(L.link(j, i))] = 0;
    }
  }
  if (p.prethreshold) {
    for (int j = 0; j < L.m; ++j) {
      if (p.scores.det_prev(j) < 0.5) fix[static_cast<std::size_t>(L.det_prev(j))] = 0;
    }
    for (int i = 0; i < L.n; ++i) {
      if (p.scores.det_curr(i) < 0.5) fix[static_cast<std::size_t>(L.det_curr(i))] = 0;
    }
  }
  return fix;
}

struct FlowResult {
  std::vector<std::uint8_t> s;
  std::int64_t value = 0;  // maximized fixed-point objective
  bool feasible = true;    // every forced variable could be used
};

// Solves the network with the given fixings. Forced-on variables carry a
// bonus larger than any achievable objective, so the optimum uses all of them
// whenever the fixings admit a feasible solution.
FlowResult solve_network(const Layout& L, const std::vector<std::int64_t>& w,
                         const std::vector<std::int8_t>& fix) {
  std::int64_t big = 1;
  for (auto x : w) big += x < 0 ? -x : x;
  const int source = 0;
  const int sink = 1;
  auto prev_node = [](int j) { return 2 + j; };
  auto curr_node = [&](int i) { return 2 + L.m + i; };

  MinCostFlow net(2 + L.m + L.n);
  std::vector<int> arc_of(static_cast<std::size_t>(L.size()), -1);
  std::int64_t forced = 0;
  auto add = [&](int var, int from, int to) {
    const auto k = static_cast<std::size_t>(var);
    if (fix[k] == 0) return;
    std::int64_t cost = -w[k];
    if (fix[k] == 1) {
      cost -= big;
      ++forced;
    }
    arc_of[k] = net.add_arc(from, to, 1, cost);
  };
  for (int j = 0; j < L.m; ++j) add(L.det_prev(j), source, prev_node(j));
  for (int i = 0; i < L.n; ++i) add(L.end(i), source, curr_node(i));
  for (int j = 0; j < L.m; ++j) {
    for (int i = 0; i < L.n; ++i) add(L.link(j, i), prev_node(j), curr_node(i));
  }
  for (int j = 0; j < L.m; ++j) add(L.start(j), prev_node(j), sink);
  for (int i = 0; i < L.n; ++i) add(L.det_curr(i), curr_node(i), sink);

  FlowResult r;
  const std::int64_t cost = net.min_cost_any_flow(source, sink);
  r.value = -(cost + forced * big);
  r.s.assign(static_cast<std::size_t>(L.size()), 0);
  for (std::size_t k = 0; k < r.s.size(); ++k) {
    if (arc_of[k] >= 0) r.s[k] = net.flow(arc_of[k]) > 0 ? 1 : 0;
  }
  for (std::size_t k = 0; k < r.s.size(); ++k) {
    if (fix[k] == 1 && r.s[k] != 1) r.feasible = false;
  }
  return r;
}

Association finish(const AssocProblem& p, const std::vector<std::uint8_t>& s) {
  Association a = Association::from_indicator(s, static_cast<int>(p.m()), static_cast<int>(p.n()));
  a.objective = objective_value(p, s);
  return a;
}

}  // namespace

void AssocProblem::validate() const {
  scores.validate();
  if (allowed.size() != 0 && (allowed.rows() != n() || allowed.cols() != m())) {
    throw InvalidInput("AssocProblem: gate mask shape does not match the scores");
  }
  if (!std::isfinite(score_offset)) {
    throw InvalidInput("AssocProblem: non-finite score offset");
  }
}

GateMask gate_by_distance(const std::vector<Detection>& prev, const std::vector<Detection>& curr,
                          double max_distance) {
  GateMask mask(static_cast<Eigen::Index>(curr.size()), static_cast<Eigen::Index>(prev.size()));
  for (std::size_t i = 0; i < curr.size(); ++i) {
    for (std::size_t j = 0; j < prev.size(); ++j) {
      mask(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          center_distance_3d(curr[i].box3d, prev[j].box3d) <= max_distance;
    }
  }
  return mask;
}

std::vector<std::uint8_t> Association::indicator() const {
  const Layout L{static_cast<int>(valid_prev.size()), static_cast<int>(valid_curr.size())};
  std::vector<std::uint8_t> s(static_cast<std::size_t>(L.size()), 0);
  for (int j = 0; j < L.m; ++j) s[static_cast<std::size_t>(L.det_prev(j))] = valid_prev[static_cast<std::size_t>(j)];
  for (int i = 0; i < L.n; ++i) s[static_cast<std::size_t>(L.det_curr(i))] = valid_curr[static_cast<std::size_t>(i)];
  for (const auto& mt : matches) s[static_cast<std::size_t>(L.link(mt.prev, mt.curr))] = 1;
  for (int j : starts) s[static_cast<std::size_t>(L.start(j))] = 1;
  for (int i : ends) s[static_cast<std::size_t>(L.end(i))] = 1;
  return s;
}

Association Association::from_indicator(const std::vector<std::uint8_t>& s, int m, int n) {
  const Layout L{m, n};
  if (static_cast<int>(s.size()) != L.size()) {
    throw InvalidInput("indicator length does not match M and N");
  }
  Association a;
  a.valid_prev.resize(static_cast<std::size_t>(m));
  a.valid_curr.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < m; ++j) {
    a.valid_prev[static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(L.det_prev(j))] != 0;
    if (s[static_cast<std::size_t>(L.start(j))] != 0) a.starts.push_back(j);
    for (int i = 0; i < n; ++i) {
      if (s[static_cast<std::size_t>(L.link(j, i))] != 0) a.matches.push_back({j, i});
    }
  }
  for (int i = 0; i < n; ++i) {
    a.valid_curr[static_cast<std::size_t>(i)] = s[static_cast<std::size_t>(L.det_curr(i))] != 0;
    if (s[static_cast<std::size_t>(L.end(i))] != 0) a.ends.push_back(i);
  }
  return a;
}

int flow_violations(const Association& a) {
  const int m = static_cast<int>(a.valid_prev.size());
  const int n = static_cast<int>(a.valid_curr.size());
  std::vector<int> out_prev(static_cast<std::size_t>(m), 0);
  std::vector<int> in_curr(static_cast<std::size_t>(n), 0);
  int violations = 0;
  for (const auto& mt : a.matches) {
    if (mt.prev < 0 || mt.prev >= m || mt.curr < 0 || mt.curr >= n) {
      ++violations;
      continue;
    }
    ++out_prev[static_cast<std::size_t>(mt.prev)];
    ++in_curr[static_cast<std::size_t>(mt.curr)];
  }
  for (int j : a.starts) {
    if (j < 0 || j >= m) ++violations;
    else ++out_prev[static_cast<std::size_t>(j)];
  }
  for (int i : a.ends) {
    if (i < 0 || i >= n) ++violations;
    else ++in_curr[static_cast<std::size_t>(i)];
  }
  for (int j = 0; j < m; ++j) {
    if ((a.valid_prev[static_cast<std::size_t>(j)] ? 1 : 0) != out_prev[static_cast<std::size_t>(j)]) ++violations;
  }
  for (int i = 0; i < n; ++i) {
    if ((a.valid_curr[static_cast<std::size_t>(i)] ? 1 : 0) != in_curr[static_cast<std::size_t>(i)]) ++violations;
  }
  return violations;
}

double objective_value(const AssocProblem& p, const std::vector<std::uint8_t>& s) {
  const auto scores = flattened_scores(p);
  if (scores.size() != s.size()) {
    throw InvalidInput("objective_value: indicator length mismatch");
  }
  double total = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] != 0) total += scores[k] - p.score_offset;
  }
  return total;
}

Association solve(const AssocProblem& problem) {
  problem.validate();
  const Layout L = layout_of(problem);
  if (L.size() == 0) {
    return Association{};
  }
  const auto w = fixed_point_weights(problem);
  auto fix = initial_fixings(problem);
  FlowResult best = solve_network(L, w, fix);
  if (!best.feasible) {
    throw std::logic_error("solve: initial fixings are infeasible");
  }

  // Lexicographic tie-break: walk variables in flattened order and pin each
  // to 0 whenever an optimum with that value exists.
  for (std::size_t k = 0; k < fix.size(); ++k) {
    if (fix[k] != -1) continue;
    if (best.s[k] == 0) {
      fix[k] = 0;
      continue;
    }
    fix[k] = 0;
    FlowResult alt = solve_network(L, w, fix);
    if (alt.feasible && alt.value == best.value) {
      best = std::move(alt);
    } else {
      fix[k] = 1;
    }
  }
  Association a = finish(problem, best.s);
  if (flow_violations(a) != 0) {
    throw std::logic_error("solve: flow conservation violated");
  }
  return a;
}

Association brute_force(const AssocProblem& problem) {
  problem.validate();
  if (problem.m() > 6 || problem.n() > 6) {
    throw SizeError("brute_force: instance larger than 6 x 6");
  }
  const Layout L = layout_of(problem);
  const auto w = fixed_point_weights(problem);
  const auto fix = initial_fixings(problem);
  auto allowed_var = [&](int var, std::uint8_t value) {
    const auto f = fix[static_cast<std::size_t>(var)];
    return f == -1 || f == value;
  };

  std::vector<std::uint8_t> s(static_cast<std::size_t>(L.size()), 0);
  std::vector<std::uint8_t> best;
  std::int64_t best_value = std::numeric_limits<std::int64_t>::min();
  std::vector<int> link_of_prev(static_cast<std::size_t>(L.m), -1);
  std::vector<bool> curr_used(static_cast<std::size_t>(L.n), false);

  auto consider = [&]() {
    std::int64_t value = 0;
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (s[k] != 0) value += w[k];
    }
    if (best.empty() || value > best_value || (value == best_value && s < best)) {
      best_value = value;
      best = s;
    }
  };

  // Choose validity of unmatched detections once the links are fixed.
  auto enumerate_free = [&]() {
    std::vector<int> prev_free, curr_free;
    for (int j = 0; j < L.m; ++j) {
      if (link_of_prev[static_cast<std::size_t>(j)] < 0) prev_free.push_back(j);
    }
    for (int i = 0; i < L.n; ++i) {
      if (!curr_used[static_cast<std::size_t>(i)]) curr_free.push_back(i);
    }
    const std::size_t k = prev_free.size() + curr_free.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
      bool ok = true;
      for (std::size_t b = 0; b < k && ok; ++b) {
        const std::uint8_t on = (mask >> b) & 1U;
        int det_var = 0;
        int side_var = 0;
        if (b < prev_free.size()) {
          det_var = L.det_prev(prev_free[b]);
          side_var = L.start(prev_free[b]);
        } else {
          det_var = L.det_curr(curr_free[b - prev_free.size()]);
          side_var = L.end(curr_free[b - prev_free.size()]);
        }
        ok = allowed_var(det_var, on) && allowed_var(side_var, on);
        s[static_cast<std::size_t>(det_var)] = on;
        s[static_cast<std::size_t>(side_var)] = on;
      }
      if (ok) consider();
    }
    for (int j : prev_free) {
      s[static_cast<std::size_t>(L.det_prev(j))] = 0;
      s[static_cast<std::size_t>(L.start(j))] = 0;
    }
    for (int i : curr_free) {
      s[static_cast<std::size_t>(L.det_curr(i))] = 0;
      s[static_cast<std::size_t>(L.end(i))] = 0;
    }
  };

  // Enumerate partial matchings prev j -> curr i.
  auto recurse = [&](auto&& self, int j) -> void {
    if (j == L.m) {
      enumerate_free();
      return;
    }
    self(self, j + 1);  // j unmatched
    for (int i = 0; i < L.n; ++i) {
      if (curr_used[static_cast<std::size_t>(i)]) continue;
      const int link = L.link(j, i);
      if (!allowed_var(link, 1) || !allowed_var(L.det_prev(j), 1) ||
          !allowed_var(L.det_curr(i), 1)) {
        continue;
      }
      curr_used[static_cast<std::size_t>(i)] = true;
      link_of_prev[static_cast<std::size_t>(j)] = i;
      s[static_cast<std::size_t>(link)] = 1;
      s[static_cast<std::size_t>(L.det_prev(j))] = 1;
      s[static_cast<std::size_t>(L.det_curr(i))] = 1;
      self(self, j + 1);
      s[static_cast<std::size_t>(link)] = 0;
      s[static_cast<std::size_t>(L.det_prev(j))] = 0;
      s[static_cast<std::size_t>(L.det_curr(i))] = 0;
      link_of_prev[static_cast<std::size_t>(j)] = -1;
      curr_used[static_cast<std::size_t>(i)] = false;
    }
  };
  recurse(recurse, 0);
  return finish(problem, best);
}

std::vector<Assignment> hungarian(const nn::Matrix& cost, double threshold) {
  if (!cost.allFinite()) {
    throw InvalidInput("hungarian: non-finite cost");
  }
  const bool transposed = cost.rows() > cost.cols();
  const nn::Matrix a = transposed ? nn::Matrix(cost.transpose()) : cost;
  const auto n = static_cast<std::size_t>(a.rows());
  const auto m = static_cast<std::size_t>(a.cols());
  std::vector<Assignment> out;
  if (n == 0) {
    return out;
  }
  // Potentials-based O(n^2 m) assignment for n <= m, 1-based internally.
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<std::size_t> p(m + 1, 0), way(m + 1, 0);
  for (std::size_t row = 1; row <= n; ++row) {
    p[0] = row;
    std::size_t j0 = 0;
    std::vector<double> minv(m + 1, kInf);
    std::vector<bool> used(m + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = a(static_cast<Eigen::Index>(i0 - 1), static_cast<Eigen::Index>(j - 1)) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  for (std::size_t j = 1; j <= m; ++j) {
    if (p[j] == 0) continue;
    const int r = static_cast<int>(p[j] - 1);
    const int c = static_cast<int>(j - 1);
    Assignment as = transposed ? Assignment{c, r} : Assignment{r, c};
    if (cost(as.row, as.col) <= threshold) out.push_back(as);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Match> greedy(const nn::Matrix& affinity, double threshold, const GateMask& allowed) {
  struct Candidate {
    double score;
    int prev;
    int curr;
  };
  std::vector<Candidate> cands;
  for (Eigen::Index i = 0; i < affinity.rows(); ++i) {
    for (Eigen::Index j = 0; j < affinity.cols(); ++j) {
      if (allowed.size() != 0 && !allowed(i, j)) continue;
      if (affinity(i, j) > threshold) {
        cands.push_back({affinity(i, j), static_cast<int>(j), static_cast<int>(i)});
      }
    }
  }
  std::stable_sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.prev != b.prev) return a.prev < b.prev;
    return a.curr < b.curr;
  });
  std::vector<bool> prev_used(static_cast<std::size_t>(affinity.cols()), false);
  std::vector<bool> curr_used(static_cast<std::size_t>(affinity.rows()), false);
  std::vector<Match> out;
  for (const auto& c : cands) {
    if (prev_used[static_cast<std::size_t>(c.prev)] || curr_used[static_cast<std::size_t>(c.curr)]) continue;
    prev_used[static_cast<std::size_t>(c.prev)] = true;
    curr_used[static_cast<std::size_t>(c.curr)] = true;
    out.push_back({c.prev, c.curr});
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::string fmt_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string write_problem(const AssocProblem& p) {
  std::ostringstream os;
  os << "# relmot association problem v1\n";
  os << "size " << p.m() << ' ' << p.n() << '\n';
  os << "offset " << fmt_real(p.score_offset) << '\n';
  os << "prethreshold " << (p.prethreshold ? 1 : 0) << '\n';
  for (Eigen::Index j = 0; j < p.m(); ++j) os << "det_prev " << j << ' ' << fmt_real(p.scores.det_prev(j)) << '\n';
  for (Eigen::Index i = 0; i < p.n(); ++i) os << "det_curr " << i << ' ' << fmt_real(p.scores.det_curr(i)) << '\n';
  for (Eigen::Index j = 0; j < p.m(); ++j) {
    for (Eigen::Index i = 0; i < p.n(); ++i) {
      os << "affinity " << j << ' ' << i << ' ' << fmt_real(p.scores.affinity(i, j)) << '\n';
    }
  }
  for (Eigen::Index j = 0; j < p.m(); ++j) os << "start " << j << ' ' << fmt_real(p.scores.start(j)) << '\n';
  for (Eigen::Index i = 0; i < p.n(); ++i) os << "end " << i << ' ' << fmt_real(p.scores.end(i)) << '\n';
  for (Eigen::Index j = 0; j < p.m(); ++j) {
    for (Eigen::Index i = 0; i < p.n(); ++i) {
      if (!p.is_allowed(i, j)) os << "gate " << j << ' ' << i << '\n';
    }
  }
  return os.str();
}

AssocProblem read_problem(std::string_view text) {
  AssocProblem p;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  bool sized = false;
  auto need_size = [&]() {
    if (!sized) throw ParseError(lineno, "record before 'size'");
  };
  auto check_index = [&](long long idx, Eigen::Index bound) {
    if (idx < 0 || idx >= bound) throw ParseError(lineno, "index out of range");
    return static_cast<Eigen::Index>(idx);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    long long a = 0, b = 0;
    double v = 0.0;
    if (tag == "size") {
      if (!(ls >> a >> b) || a < 0 || b < 0) throw ParseError(lineno, "bad size record");
      p.scores.det_prev = nn::Vector::Zero(a);
      p.scores.start = nn::Vector::Zero(a);
      p.scores.det_curr = nn::Vector::Zero(b);
      p.scores.end = nn::Vector::Zero(b);
      p.scores.affinity = nn::Matrix::Zero(b, a);
      sized = true;
    } else if (tag == "offset") {
      if (!(ls >> p.score_offset)) throw ParseError(lineno, "bad offset record");
    } else if (tag == "prethreshold") {
      if (!(ls >> a)) throw ParseError(lineno, "bad prethreshold record");
      p.prethreshold = a != 0;
    } else if (tag == "det_prev" || tag == "start") {
      need_size();
      if (!(ls >> a >> v)) throw ParseError(lineno, "bad " + tag + " record");
      (tag == "start" ? p.scores.start : p.scores.det_prev)(check_index(a, p.m())) = v;
    } else if (tag == "det_curr" || tag == "end") {
      need_size();
      if (!(ls >> a >> v)) throw ParseError(lineno, "bad " + tag + " record");
      (tag == "end" ? p.scores.end : p.scores.det_curr)(check_index(a, p.n())) = v;
    } else if (tag == "affinity") {
      need_size();
      if (!(ls >> a >> b >> v)) throw ParseError(lineno, "bad affinity record");
      p.scores.affinity(check_index(b, p.n()), check_index(a, p.m())) = v;
    } else if (tag == "gate") {
      need_size();
      if (!(ls >> a >> b)) throw ParseError(lineno, "bad gate record");
      if (p.allowed.size() == 0) p.allowed = GateMask::Constant(p.n(), p.m(), true);
      p.allowed(check_index(b, p.n()), check_index(a, p.m())) = false;
    } else {
      throw ParseError(lineno, "unknown record '" + tag + "'");
    }
  }
  return p;
}

std::string write_solution(const Association& a) {
  std::ostringstream os;
  os << "# relmot association solution v1\n";
  os << "size " << a.valid_prev.size() << ' ' << a.valid_curr.size() << '\n';
  os << "objective " << fmt_real(a.objective) << '\n';
  for (std::size_t j = 0; j < a.valid_prev.size(); ++j) os << "valid_prev " << j << ' ' << (a.valid_prev[j] ? 1 : 0) << '\n';
  for (std::size_t i = 0; i < a.valid_curr.size(); ++i) os << "valid_curr " << i << ' ' << (a.valid_curr[i] ? 1 : 0) << '\n';
  for (const auto& mt : a.matches) os << "match " << mt.prev << ' ' << mt.curr << '\n';
  for (int j : a.starts) os << "start " << j << '\n';
  for (int i : a.ends) os << "end " << i << '\n';
  return os.str();
}

}  // namespace relmot
