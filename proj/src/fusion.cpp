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

#include "relmot/fusion.hpp"

#include "relmot/error.hpp"

namespace relmot {

std::string_view to_string(FusionMode m) {
  switch (m) {
    case FusionMode::Add:
      return "add";
    case FusionMode::Concat:
      return "concat";
    case FusionMode::WeightedSum:
      return "wsum";
  }
  return "?";
}

FusionMode parse_fusion_mode(std::string_view s) {
  if (s == "add") return FusionMode::Add;
  if (s == "concat") return FusionMode::Concat;
  if (s == "wsum") return FusionMode::WeightedSum;
  throw ConfigError("unknown fusion mode '" + std::string(s) + "' (add|concat|wsum)");
}

FusionParams::FusionParams(Eigen::Index d2, Eigen::Index d3, Eigen::Index out)
    : proj2d(d2, out), proj3d(d3, out), concat_proj(d2 + d3, out), gate2d(d2, 1), gate3d(d3, 1) {}

void FusionParams::check_shapes() const {
  const auto d2 = in2d();
  const auto d3 = in3d();
  const auto out = out_dim();
  if (proj3d.out_dim() != out || concat_proj.out_dim() != out || concat_proj.in_dim() != d2 + d3 ||
      gate2d.in_dim() != d2 || gate3d.in_dim() != d3 || gate2d.out_dim() != 1 ||
      gate3d.out_dim() != 1) {
    throw ConfigError("FusionParams: inconsistent map shapes");
  }
}

nn::Vector fuse_appearance(const nn::Vector& f2d, const nn::Vector& f3d, FusionMode mode,
                           const FusionParams& p) {
  if (!f2d.allFinite() || !f3d.allFinite()) {
    throw InvalidInput("fuse_appearance: non-finite input");
  }
  nn::Matrix out = fuse_appearance_batch(f2d.transpose(), f3d.transpose(), mode, p);
  return out.row(0).transpose();
}

nn::Vector fuse_with_motion(const nn::Vector& app, const nn::Vector& motion_feat) {
  nn::Vector out(app.size() + motion_feat.size());
  out << app, motion_feat;
  return out;
}

std::pair<nn::Vector, nn::Vector> split_fused(const nn::Vector& fused, Eigen::Index app_dim) {
  if (app_dim < 0 || app_dim > fused.size()) {
    throw ConfigError("split_fused: appearance width out of range");
  }
  return {fused.head(app_dim), fused.tail(fused.size() - app_dim)};
}

nn::Matrix fuse_appearance_batch(const nn::Matrix& f2d, const nn::Matrix& f3d, FusionMode mode,
                                 const FusionParams& p, FusionCache* cache) {
  p.check_shapes();
  if (f2d.cols() != p.in2d() || f3d.cols() != p.in3d() || f2d.rows() != f3d.rows()) {
    throw ConfigError("fuse_appearance: input widths do not match the fusion parameters");
  }
  FusionCache local;
  FusionCache& c = cache != nullptr ? *cache : local;
  c.f2d = f2d;
  c.f3d = f3d;
  switch (mode) {
    case FusionMode::Add:
      return p.proj2d.forward(f2d) + p.proj3d.forward(f3d);
    case FusionMode::Concat: {
      nn::Matrix cat(f2d.rows(), f2d.cols() + f3d.cols());
      cat << f2d, f3d;
      return p.concat_proj.forward(cat);
    }
    case FusionMode::WeightedSum: {
      c.a2d = p.proj2d.forward(f2d);
      c.a3d = p.proj3d.forward(f3d);
      c.gate2d = p.gate2d.forward(f2d).col(0).unaryExpr([](double z) { return nn::sigmoid(z); });
      c.gate3d = p.gate3d.forward(f3d).col(0).unaryExpr([](double z) { return nn::sigmoid(z); });
      return c.gate2d.asDiagonal() * c.a2d + c.gate3d.asDiagonal() * c.a3d;
    }
  }
  throw ConfigError("unknown fusion mode");
}

void fuse_appearance_backward(const FusionCache& c, const nn::Matrix& dout, FusionMode mode,
                              const FusionParams& p, FusionParams& grad) {
  switch (mode) {
    case FusionMode::Add:
      p.proj2d.backward(c.f2d, dout, grad.proj2d);
      p.proj3d.backward(c.f3d, dout, grad.proj3d);
      return;
    case FusionMode::Concat: {
      nn::Matrix cat(c.f2d.rows(), c.f2d.cols() + c.f3d.cols());
      cat << c.f2d, c.f3d;
      p.concat_proj.backward(cat, dout, grad.concat_proj);
      return;
    }
    case FusionMode::WeightedSum: {
      p.proj2d.backward(c.f2d, c.gate2d.asDiagonal() * dout, grad.proj2d);
      p.proj3d.backward(c.f3d, c.gate3d.asDiagonal() * dout, grad.proj3d);
      // d out / d gate = projected feature; d sigma = s (1 - s)
      nn::Vector dg2 = dout.cwiseProduct(c.a2d).rowwise().sum();
      nn::Vector dg3 = dout.cwiseProduct(c.a3d).rowwise().sum();
      dg2 = dg2.cwiseProduct(c.gate2d.cwiseProduct((1.0 - c.gate2d.array()).matrix()));
      dg3 = dg3.cwiseProduct(c.gate3d.cwiseProduct((1.0 - c.gate3d.array()).matrix()));
      p.gate2d.backward(c.f2d, dg2, grad.gate2d);
      p.gate3d.backward(c.f3d, dg3, grad.gate3d);
      return;
    }
  }
}

}  // namespace relmot
