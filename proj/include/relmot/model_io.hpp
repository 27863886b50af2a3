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

#include <filesystem>
#include <string>
#include <string_view>

#include "relmot/relnet.hpp"

namespace relmot::io {

/// Model file layout, little-endian:
///   "RMMD", u32 version, u64 n, n bytes of model.* config text,
///   u32 block count, then per parameter block
///   {u32 name length, name, u64 rows, u64 cols, rows*cols f64 row-major}.
/// Blocks appear in for_each_parameter order; loading checks names and shapes.
inline constexpr std::uint32_t kModelFileVersion = 1;

std::string encode_model(const Model& model);
Model decode_model(std::string_view bytes);

void save_model(const std::filesystem::path& path, const Model& model);
Model load_model(const std::filesystem::path& path);

}  // namespace relmot::io
