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

#include "relmot/kitti.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "relmot/error.hpp"

namespace relmot::io {
namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::int64_t to_int(std::string_view tok, std::size_t lineno, const char* field) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(lineno, std::string("bad integer in field '") + field + "'");
  }
  return v;
}

double to_real(std::string_view tok, std::size_t lineno, const char* field) {
  // strtod is locale-sensitive; the classic locale is assumed ('.' separator).
  std::string s(tok);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || s.empty() || !std::isfinite(v)) {
    throw ParseError(lineno, std::string("bad number in field '") + field + "'");
  }
  return v;
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int k = 0; k < 4; ++k) out.push_back(static_cast<char>((v >> (8 * k)) & 0xFFU));
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int k = 0; k < 8; ++k) out.push_back(static_cast<char>((v >> (8 * k)) & 0xFFU));
}

struct Reader {
  std::string_view bytes;
  std::size_t pos = 0;

  std::uint64_t get(int width) {
    if (pos + static_cast<std::size_t>(width) > bytes.size()) {
      throw IoError("feature sidecar truncated");
    }
    std::uint64_t v = 0;
    for (int k = 0; k < width; ++k) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[pos + static_cast<std::size_t>(k)]))
           << (8 * k);
    }
    pos += static_cast<std::size_t>(width);
    return v;
  }
};

}  // namespace

std::string format_real(double v) {
  if (!std::isfinite(v)) {
    throw InvalidInput("write_labels: non-finite value");
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::vector<KittiRow> parse_labels(std::string_view text) {
  std::vector<KittiRow> rows;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++lineno;
    const auto tok = split_ws(line);
    if (tok.empty()) continue;
    if (tok.size() != 17 && tok.size() != 18) {
      throw ParseError(lineno, "expected 17 or 18 fields, found " + std::to_string(tok.size()));
    }
    KittiRow r;
    r.frame = to_int(tok[0], lineno, "frame");
    r.track_id = to_int(tok[1], lineno, "track_id");
    r.type = std::string(tok[2]);
    r.truncated = to_real(tok[3], lineno, "truncated");
    r.occluded = static_cast<int>(to_int(tok[4], lineno, "occluded"));
    r.alpha = to_real(tok[5], lineno, "alpha");
    r.left = to_real(tok[6], lineno, "left");
    r.top = to_real(tok[7], lineno, "top");
    r.right = to_real(tok[8], lineno, "right");
    r.bottom = to_real(tok[9], lineno, "bottom");
    r.h = to_real(tok[10], lineno, "height");
    r.w = to_real(tok[11], lineno, "width");
    r.l = to_real(tok[12], lineno, "length");
    r.x = to_real(tok[13], lineno, "x");
    r.y = to_real(tok[14], lineno, "y");
    r.z = to_real(tok[15], lineno, "z");
    r.rotation_y = to_real(tok[16], lineno, "rotation_y");
    if (tok.size() == 18) r.score = to_real(tok[17], lineno, "score");
    if (r.frame < 0) throw ParseError(lineno, "negative frame");
    if (!r.dont_care() && (r.right <= r.left || r.bottom <= r.top)) {
      throw ParseError(lineno, "2D box corners are not ordered (right > left, bottom > top)");
    }
    rows.push_back(std::move(r));
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const KittiRow& a, const KittiRow& b) { return a.frame < b.frame; });
  return rows;
}

std::string write_labels(std::span<const KittiRow> rows) {
  std::string out;
  for (const auto& r : rows) {
    std::string line = std::to_string(r.frame) + ' ' + std::to_string(r.track_id) + ' ' + r.type;
    line += ' ' + format_real(r.truncated) + ' ' + std::to_string(r.occluded);
    for (double v : {r.alpha, r.left, r.top, r.right, r.bottom, r.h, r.w, r.l, r.x, r.y, r.z,
                     r.rotation_y}) {
      line += ' ' + format_real(v);
    }
    if (r.score) line += ' ' + format_real(*r.score);
    out += line;
    out += '\n';
  }
  return out;
}

LabeledBox to_labeled_box(const KittiRow& r) {
  LabeledBox b;
  b.frame = r.frame;
  b.id = r.track_id;
  b.box2d = Box2D::from_corners(r.left, r.top, r.right, r.bottom);
  b.box3d = Box3D{r.x, r.y - 0.5 * r.h, r.z, r.w, r.h, r.l, r.rotation_y};
  b.score = r.score.value_or(1.0);
  return b;
}

KittiRow to_row(const LabeledBox& b, std::string type, bool with_score) {
  KittiRow r;
  r.frame = b.frame;
  r.track_id = b.id;
  r.type = std::move(type);
  r.left = b.box2d.left();
  r.top = b.box2d.top();
  r.right = b.box2d.right();
  r.bottom = b.box2d.bottom();
  r.h = b.box3d.h;
  r.w = b.box3d.w;
  r.l = b.box3d.l;
  r.x = b.box3d.cx;
  r.y = b.box3d.cy + 0.5 * b.box3d.h;
  r.z = b.box3d.cz;
  r.rotation_y = b.box3d.yaw;
  double alpha = b.box3d.yaw - std::atan2(b.box3d.cx, b.box3d.cz);
  if (alpha > std::numbers::pi) alpha -= 2.0 * std::numbers::pi;
  if (alpha < -std::numbers::pi) alpha += 2.0 * std::numbers::pi;
  r.alpha = alpha;
  if (with_score) r.score = b.score;
  return r;
}

std::vector<std::vector<LabeledBox>> group_by_frame(std::span<const KittiRow> rows,
                                                    std::int64_t n_frames) {
  std::int64_t frames = n_frames;
  if (frames < 0) {
    frames = 0;
    for (const auto& r : rows) frames = std::max(frames, r.frame + 1);
  }
  std::vector<std::vector<LabeledBox>> out(static_cast<std::size_t>(frames));
  for (const auto& r : rows) {
    if (r.dont_care() || r.frame >= frames) continue;
    out[static_cast<std::size_t>(r.frame)].push_back(to_labeled_box(r));
  }
  return out;
}

std::vector<GtTrack> group_tracks(std::span<const KittiRow> rows) {
  std::map<std::int64_t, GtTrack> tracks;
  for (const auto& r : rows) {
    if (r.dont_care()) continue;
    auto& t = tracks[r.track_id];
    t.id = TrackId{r.track_id};
    t.boxes.push_back(to_labeled_box(r));
  }
  std::vector<GtTrack> out;
  for (auto& [id, t] : tracks) {
    std::stable_sort(t.boxes.begin(), t.boxes.end(),
                     [](const LabeledBox& a, const LabeledBox& b) { return a.frame < b.frame; });
    out.push_back(std::move(t));
  }
  return out;
}

std::string encode_features(std::uint32_t dim, std::span<const FeatureRecord> records) {
  std::string out = "RMFS";
  put_u32(out, kSidecarVersion);
  put_u32(out, dim);
  put_u64(out, records.size());
  for (const auto& r : records) {
    if (r.values.size() != dim) {
      throw InvalidInput("feature record width does not match the header");
    }
    put_u32(out, r.frame);
    put_u32(out, r.index);
    for (double v : r.values) put_u64(out, std::bit_cast<std::uint64_t>(v));
  }
  return out;
}

std::vector<FeatureRecord> decode_features(std::string_view bytes, std::uint32_t* dim_out) {
  if (bytes.size() < 4 || bytes.substr(0, 4) != "RMFS") {
    throw IoError("not a feature sidecar (bad magic)");
  }
  Reader rd{bytes, 4};
  const auto version = static_cast<std::uint32_t>(rd.get(4));
  if (version != kSidecarVersion) {
    throw IoError("unsupported feature sidecar version " + std::to_string(version));
  }
  const auto dim = static_cast<std::uint32_t>(rd.get(4));
  const auto count = rd.get(8);
  const std::uint64_t record_bytes = 8 + 8ULL * dim;
  if (count > (bytes.size() - rd.pos) / record_bytes) {
    throw IoError("feature sidecar truncated");
  }
  std::vector<FeatureRecord> records(static_cast<std::size_t>(count));
  for (auto& r : records) {
    r.frame = static_cast<std::uint32_t>(rd.get(4));
    r.index = static_cast<std::uint32_t>(rd.get(4));
    r.values.resize(dim);
    for (auto& v : r.values) v = std::bit_cast<double>(rd.get(8));
  }
  if (rd.pos != bytes.size()) {
    throw IoError("trailing bytes after feature records");
  }
  if (dim_out != nullptr) *dim_out = dim;
  return records;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open '" + path.string() + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + tmp.string() + "'");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw IoError("write failed for '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace relmot::io
