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

#include "relmot/model_io.hpp"

#include <bit>
#include <cstdint>

#include "relmot/config.hpp"
#include "relmot/error.hpp"
#include "relmot/kitti.hpp"

namespace relmot::io {
namespace {

void put(std::string& out, std::uint64_t v, int width) {
  for (int k = 0; k < width; ++k) out.push_back(static_cast<char>((v >> (8 * k)) & 0xFFU));
}

class Cursor {
 public:
  explicit Cursor(std::string_view bytes) : bytes_(bytes) {}

  std::uint64_t get(int width) {
    need(static_cast<std::size_t>(width));
    std::uint64_t v = 0;
    for (int k = 0; k < width; ++k) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_++])) << (8 * k);
    }
    return v;
  }

  std::string_view take(std::uint64_t n) {
    need(n);
    const auto out = bytes_.substr(pos_, static_cast<std::size_t>(n));
    pos_ += static_cast<std::size_t>(n);
    return out;
  }

  bool done() const { return pos_ == bytes_.size(); }

 private:
  void need(std::uint64_t n) const {
    if (n > bytes_.size() - pos_) throw IoError("model file truncated");
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string encode_model(const Model& model) {
  std::string out = "RMMD";
  put(out, kModelFileVersion, 4);
  const std::string config = format_model_config(model.config);
  put(out, config.size(), 8);
  out += config;
  std::uint32_t blocks = 0;
  for_each_parameter(model, [&](const std::string&, Eigen::Ref<const nn::Matrix>) { ++blocks; });
  put(out, blocks, 4);
  for_each_parameter(model, [&](const std::string& name, Eigen::Ref<const nn::Matrix> p) {
    put(out, name.size(), 4);
    out += name;
    put(out, static_cast<std::uint64_t>(p.rows()), 8);
    put(out, static_cast<std::uint64_t>(p.cols()), 8);
    for (Eigen::Index r = 0; r < p.rows(); ++r) {
      for (Eigen::Index c = 0; c < p.cols(); ++c) put(out, std::bit_cast<std::uint64_t>(p(r, c)), 8);
    }
  });
  return out;
}

Model decode_model(std::string_view bytes) {
  if (bytes.substr(0, 4) != "RMMD") throw IoError("not a model file (bad magic)");
  Cursor cur(bytes.substr(4));
  const auto version = cur.get(4);
  if (version != kModelFileVersion) {
    throw IoError("unsupported model file version " + std::to_string(version));
  }
  const auto config_size = cur.get(8);
  ModelConfig config;
  try {
    config = parse_model_config(cur.take(config_size));
  } catch (const ConfigError& e) {
    throw IoError(std::string("model file config: ") + e.what());
  }
  Model model = Model::create(config, 0);
  const auto blocks = cur.get(4);
  std::uint64_t seen = 0;
  for_each_parameter(model, [&](const std::string& name, Eigen::Ref<nn::Matrix> p) {
    if (seen++ >= blocks) throw IoError("model file is missing block '" + name + "'");
    const auto stored = cur.take(cur.get(4));
    const auto rows = cur.get(8);
    const auto cols = cur.get(8);
    if (stored != name || rows != static_cast<std::uint64_t>(p.rows()) ||
        cols != static_cast<std::uint64_t>(p.cols())) {
      throw IoError("model file block '" + std::string(stored) + "' does not match '" + name +
                    "' of the stored configuration");
    }
    for (Eigen::Index r = 0; r < p.rows(); ++r) {
      for (Eigen::Index c = 0; c < p.cols(); ++c) p(r, c) = std::bit_cast<double>(cur.get(8));
    }
  });
  if (seen != blocks || !cur.done()) throw IoError("model file has unexpected trailing data");
  return model;
}

void save_model(const std::filesystem::path& path, const Model& model) {
  write_file_atomic(path, encode_model(model));
}

Model load_model(const std::filesystem::path& path) { return decode_model(read_file(path)); }

}  // namespace relmot::io
