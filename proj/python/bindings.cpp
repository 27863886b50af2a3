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
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "relmot/assoc.hpp"
#include "relmot/config.hpp"
#include "relmot/core.hpp"
#include "relmot/kitti.hpp"
#include "relmot/metrics.hpp"
#include "relmot/sim.hpp"
#include "relmot/tracker.hpp"

namespace py = pybind11;
using namespace relmot;

namespace {

AssocProblem make_problem(const nn::Vector& det_prev, const nn::Vector& det_curr, const nn::Matrix& affinity,
                          const nn::Vector& start, const nn::Vector& end, double score_offset) {
  AssocProblem p;
  p.scores = ScoreSet{det_prev, det_curr, affinity, start, end};
  p.score_offset = score_offset;
  return p;
}

py::dict to_dict(const Association& a) {
  py::list matches;
  for (const auto& m : a.matches) matches.append(py::make_tuple(m.prev, m.curr));
  py::dict d;
  d["matches"] = matches;
  d["starts"] = a.starts;
  d["ends"] = a.ends;
  d["valid_prev"] = a.valid_prev;
  d["valid_curr"] = a.valid_curr;
  d["objective"] = a.objective;
  d["flow_violations"] = flow_violations(a);
  return d;
}

py::object optional_real(const std::optional<double>& v) {
  return v ? py::cast(*v) : py::none();
}

py::dict to_dict(const metrics::MotReport& r) {
  py::dict d;
  d["mota"] = optional_real(r.mota);
  d["motp"] = optional_real(r.motp);
  d["id_switches"] = r.id_switches;
  d["fragmentations"] = r.fragmentations;
  d["mt"] = r.mt;
  d["ml"] = r.ml;
  d["pt"] = r.pt;
  d["gt"] = r.totals.gt;
  d["fn"] = r.totals.fn;
  d["fp"] = r.totals.fp;
  return d;
}

metrics::MotReport evaluate_text(const std::string& gt, const std::string& results) {
  const auto gt_rows = io::parse_labels(gt);
  const auto hyp_rows = io::parse_labels(results);
  std::int64_t n = 0;
  for (const auto& r : gt_rows) n = std::max(n, r.frame + 1);
  for (const auto& r : hyp_rows) n = std::max(n, r.frame + 1);
  const auto g = io::group_by_frame(gt_rows, n);
  const auto h = io::group_by_frame(hyp_rows, n);
  return metrics::evaluate(g, h);
}

// Simulates a world from config text and tracks it with the embedding scorer.
py::dict track_simulated(const std::string& config_text, const std::string& backend) {
  RunConfig config = parse_config(config_text);
  config.tracker.backend = parse_assoc_backend(backend);
  config.validate();
  const sim::SimWorld w = sim::generate(config.sim);
  const SequenceResult r = run_sequence(w.detections, EmbeddingScorer{}, config.tracker);
  py::dict d;
  d["ids"] = r.ids;
  d["truth"] = w.detection_ids;
  d["report"] = to_dict(metrics::evaluate(w.gt_frames, to_hypotheses(w.detections, r.ids), config.metrics));
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Relation-network multi-object tracking: association, metrics and simulation.";
  m.attr("__version__") = RELMOT_VERSION;

  m.def(
      "solve",
      [](const nn::Vector& det_prev, const nn::Vector& det_curr, const nn::Matrix& affinity,
         const nn::Vector& start, const nn::Vector& end, double score_offset) {
        return to_dict(solve(make_problem(det_prev, det_curr, affinity, start, end, score_offset)));
      },
      py::arg("det_prev"), py::arg("det_curr"), py::arg("affinity"), py::arg("start"), py::arg("end"),
      py::arg("score_offset") = 0.5,
      "Exact association of one frame pair. affinity is N x M (current x previous).");
  m.def(
      "brute_force",
      [](const nn::Vector& det_prev, const nn::Vector& det_curr, const nn::Matrix& affinity,
         const nn::Vector& start, const nn::Vector& end, double score_offset) {
        return to_dict(brute_force(make_problem(det_prev, det_curr, affinity, start, end, score_offset)));
      },
      py::arg("det_prev"), py::arg("det_curr"), py::arg("affinity"), py::arg("start"), py::arg("end"),
      py::arg("score_offset") = 0.5, "Exhaustive association oracle (N, M <= 6).");
  m.def(
      "hungarian",
      [](const nn::Matrix& cost, double threshold) {
        py::list out;
        for (const auto& a : hungarian(cost, threshold)) out.append(py::make_tuple(a.row, a.col));
        return out;
      },
      py::arg("cost"), py::arg("threshold") = std::numeric_limits<double>::infinity(),
      "Minimum-cost assignment as (row, col) pairs; pairs costing more than threshold are dropped.");
  m.def(
      "iou_2d",
      [](const std::array<double, 4>& a, const std::array<double, 4>& b) {
        return iou_2d(Box2D::from_corners(a[0], a[1], a[2], a[3]), Box2D::from_corners(b[0], b[1], b[2], b[3]));
      },
      py::arg("a"), py::arg("b"), "IoU of two (left, top, right, bottom) boxes.");
  m.def(
      "evaluate", [](const std::string& gt, const std::string& results) { return to_dict(evaluate_text(gt, results)); },
      py::arg("gt"), py::arg("results"), "CLEAR MOT metrics of two KITTI label texts (IoU matching at 0.5).");
  m.def(
      "round_trip_labels", [](const std::string& text) { return io::write_labels(io::parse_labels(text)); },
      py::arg("text"), "Parses KITTI label text and writes it back in canonical form.");
  m.def("track_simulated", &track_simulated, py::arg("config") = "", py::arg("backend") = "lp",
        "Simulates a world from config text, tracks it with embedding affinities and evaluates it.");
  m.def("default_config", &documented_defaults, "Every configuration key with its default and documentation.");

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
}
