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

#include "relmot/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "relmot/assoc.hpp"
#include "relmot/error.hpp"

namespace relmot::metrics {
namespace {

constexpr double kForbidden = 1e6;

// Similarity used for gating and for MOTP, plus whether the pair qualifies.
struct Overlap {
  double distance;
  bool ok;
};

Overlap overlap(const LabeledBox& g, const LabeledBox& h, const MetricsConfig& c) {
  if (c.space == MatchSpace::Iou2D) {
    const double iou = iou_2d(g.box2d, h.box2d);
    return {iou, iou >= c.iou_threshold};
  }
  const double d = center_distance_3d(g.box3d, h.box3d);
  return {d, d <= c.distance_threshold};
}

// Assignment cost: lower is better in both spaces.
double cost_of(const Overlap& o, const MetricsConfig& c) {
  if (!o.ok) return kForbidden;
  return c.space == MatchSpace::Iou2D ? 1.0 - o.distance : o.distance;
}

std::string fmt(double v, const char* spec = "%.2f") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

}  // namespace

void MetricsConfig::validate() const {
  if (!(iou_threshold > 0.0 && iou_threshold < 1.0)) {
    throw ConfigError("metrics: IoU threshold must lie in (0, 1)");
  }
  if (!(distance_threshold > 0.0)) {
    throw ConfigError("metrics: distance threshold must be positive");
  }
}

FrameMatch match_frame(std::span<const LabeledBox> gt, std::span<const LabeledBox> hyp,
                       const Correspondence& previous, const Correspondence& last_known,
                       const MetricsConfig& config) {
  config.validate();
  FrameMatch out;
  std::vector<bool> gt_done(gt.size(), false);
  std::vector<bool> hyp_done(hyp.size(), false);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;

  // Keep last frame's correspondences that still qualify.
  for (std::size_t g = 0; g < gt.size(); ++g) {
    const auto it = previous.find(gt[g].id);
    if (it == previous.end()) continue;
    for (std::size_t h = 0; h < hyp.size(); ++h) {
      if (hyp_done[h] || hyp[h].id != it->second) continue;
      if (overlap(gt[g], hyp[h], config).ok) {
        gt_done[g] = hyp_done[h] = true;
        pairs.emplace_back(g, h);
      }
      break;
    }
  }

  // Optimal assignment for the rest.
  std::vector<std::size_t> gi, hi;
  for (std::size_t g = 0; g < gt.size(); ++g) if (!gt_done[g]) gi.push_back(g);
  for (std::size_t h = 0; h < hyp.size(); ++h) if (!hyp_done[h]) hi.push_back(h);
  if (!gi.empty() && !hi.empty()) {
    nn::Matrix cost(static_cast<Eigen::Index>(gi.size()), static_cast<Eigen::Index>(hi.size()));
    for (std::size_t a = 0; a < gi.size(); ++a) {
      for (std::size_t b = 0; b < hi.size(); ++b) {
        cost(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
            cost_of(overlap(gt[gi[a]], hyp[hi[b]], config), config);
      }
    }
    for (const auto& as : hungarian(cost, kForbidden / 2)) {
      pairs.emplace_back(gi[static_cast<std::size_t>(as.row)], hi[static_cast<std::size_t>(as.col)]);
    }
  }

  auto& c = out.counts;
  c.gt = static_cast<std::int64_t>(gt.size());
  c.matches = static_cast<std::int64_t>(pairs.size());
  c.fn = c.gt - c.matches;
  c.fp = static_cast<std::int64_t>(hyp.size()) - c.matches;
  std::sort(pairs.begin(), pairs.end());
  for (const auto& [g, h] : pairs) {
    c.distance_sum += overlap(gt[g], hyp[h], config).distance;
    out.mapping[gt[g].id] = hyp[h].id;
    const auto it = last_known.find(gt[g].id);
    if (it != last_known.end() && it->second != hyp[h].id) ++c.idsw;
  }
  return out;
}

MotAccumulator::MotAccumulator(MetricsConfig config) : config_(config) { config_.validate(); }

void MotAccumulator::update(std::span<const LabeledBox> gt, std::span<const LabeledBox> hyp) {
  FrameMatch fm = match_frame(gt, hyp, previous_, last_known_, config_);
  for (const auto& g : gt) {
    auto& cov = current_[g.id];
    ++cov.frames;
    if (fm.mapping.contains(g.id)) {
      ++cov.matched;
      if (cov.in_gap) ++cov.fragments;
      cov.in_gap = false;
      cov.ever_matched = true;
    } else if (cov.ever_matched) {
      cov.in_gap = true;
    }
  }
  for (const auto& [g, h] : fm.mapping) last_known_[g] = h;
  previous_ = std::move(fm.mapping);
  frames_.push_back(fm.counts);
}

void MotAccumulator::merge(const MotAccumulator& other) {
  frames_.insert(frames_.end(), other.frames_.begin(), other.frames_.end());
  for (const auto& [id, cov] : other.current_) finished_.push_back(cov);
  finished_.insert(finished_.end(), other.finished_.begin(), other.finished_.end());
}

const std::vector<TrackCoverage>& MotAccumulator::coverage() const {
  all_ = finished_;
  for (const auto& [id, cov] : current_) all_.push_back(cov);
  return all_;
}

FrameCounts MotAccumulator::totals() const {
  FrameCounts t;
  for (const auto& f : frames_) {
    t.gt += f.gt;
    t.matches += f.matches;
    t.fn += f.fn;
    t.fp += f.fp;
    t.idsw += f.idsw;
    t.distance_sum += f.distance_sum;
  }
  return t;
}

std::optional<double> mota(const MotAccumulator& acc) {
  const auto t = acc.totals();
  if (t.gt == 0) return std::nullopt;
  return 1.0 - static_cast<double>(t.fn + t.fp + t.idsw) / static_cast<double>(t.gt);
}

std::optional<double> motp(const MotAccumulator& acc) {
  const auto t = acc.totals();
  if (t.matches == 0) return std::nullopt;
  return t.distance_sum / static_cast<double>(t.matches);
}

double TrajectoryStats::mt_percent() const {
  return total == 0 ? 0.0 : 100.0 * static_cast<double>(mostly_tracked) / static_cast<double>(total);
}
double TrajectoryStats::ml_percent() const {
  return total == 0 ? 0.0 : 100.0 * static_cast<double>(mostly_lost) / static_cast<double>(total);
}
double TrajectoryStats::pt_percent() const {
  return total == 0 ? 0.0
                    : 100.0 * static_cast<double>(partially_tracked) / static_cast<double>(total);
}

TrajectoryStats trajectory_stats(const MotAccumulator& acc) {
  TrajectoryStats s;
  for (const auto& cov : acc.coverage()) {
    if (cov.frames == 0) continue;
    ++s.total;
    // Compare matched / frames against 0.8 and 0.2 on integers.
    if (5 * cov.matched > 4 * cov.frames) {
      ++s.mostly_tracked;
    } else if (5 * cov.matched < cov.frames) {
      ++s.mostly_lost;
    }
    s.fragmentations += cov.fragments;
  }
  s.partially_tracked = s.total - s.mostly_tracked - s.mostly_lost;
  return s;
}

MotReport report(const MotAccumulator& acc) {
  MotReport r;
  r.mota = mota(acc);
  r.motp = motp(acc);
  r.totals = acc.totals();
  r.id_switches = r.totals.idsw;
  r.trajectories = trajectory_stats(acc);
  r.fragmentations = r.trajectories.fragmentations;
  r.mt = r.trajectories.mt_percent();
  r.ml = r.trajectories.ml_percent();
  r.pt = r.trajectories.pt_percent();
  return r;
}

MotReport evaluate(std::span<const std::vector<LabeledBox>> gt,
                   std::span<const std::vector<LabeledBox>> hyp, const MetricsConfig& config) {
  MotAccumulator acc(config);
  const std::size_t frames = std::max(gt.size(), hyp.size());
  const std::vector<LabeledBox> none;
  for (std::size_t t = 0; t < frames; ++t) {
    acc.update(t < gt.size() ? gt[t] : none, t < hyp.size() ? hyp[t] : none);
  }
  return report(acc);
}

std::string format_table(const std::vector<std::pair<std::string, MotReport>>& rows,
                         const std::string& first_column) {
  std::size_t width = first_column.size();
  for (const auto& [name, r] : rows) width = std::max(width, name.size());
  std::ostringstream os;
  auto pad = [&](const std::string& s) { return s + std::string(width - s.size(), ' '); };
  os << pad(first_column) << "  MOTA(%)  MOTP(%)   ID-SW    Frag   MT(%)   ML(%)\n";
  for (const auto& [name, r] : rows) {
    auto pct = [](const std::optional<double>& v) {
      return v ? fmt(100.0 * *v, "%7.2f") : std::string("    n/a");
    };
    os << pad(name) << "  " << pct(r.mota) << "  " << pct(r.motp) << "  "
       << fmt(static_cast<double>(r.id_switches), "%6.0f") << "  "
       << fmt(static_cast<double>(r.fragmentations), "%6.0f") << "  " << fmt(r.mt, "%6.2f")
       << "  " << fmt(r.ml, "%6.2f") << '\n';
  }
  return os.str();
}

std::string format_key_values(const MotReport& r) {
  auto opt = [](const std::optional<double>& v) {
    return v ? fmt(100.0 * *v, "%.6f") : std::string("undefined");
  };
  std::ostringstream os;
  os << "MOTA=" << opt(r.mota) << '\n';
  os << "MOTP=" << opt(r.motp) << '\n';
  os << "ID-SW=" << r.id_switches << '\n';
  os << "Frag=" << r.fragmentations << '\n';
  os << "MT=" << fmt(r.mt, "%.6f") << '\n';
  os << "ML=" << fmt(r.ml, "%.6f") << '\n';
  os << "PT=" << fmt(r.pt, "%.6f") << '\n';
  os << "GT=" << r.totals.gt << '\n';
  os << "FN=" << r.totals.fn << '\n';
  os << "FP=" << r.totals.fp << '\n';
  os << "matches=" << r.totals.matches << '\n';
  os << "trajectories=" << r.trajectories.total << '\n';
  return os.str();
}

}  // namespace relmot::metrics
