// Copyright 2026 The Vecplan Authors
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

#include "vecplan/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace vecplan {

namespace channels {

std::vector<std::string> names() {
  std::vector<std::string> out;
  for (int v = 0; v < kJunctionTypeCount; ++v)
    out.push_back("corner/" + to_string(static_cast<JunctionType>(v)));
  for (const char* d : {"+X", "+Y", "-X", "-Y"}) out.push_back(std::string("opening/") + d);
  for (const char* c : {"TL", "TR", "BR", "BL"}) out.push_back(std::string("icon_corner/") + c);
  out.push_back("room/background");
  out.push_back("room/wall");
  for (int v = 0; v < kRoomKindCount; ++v)
    out.push_back(std::string("room/") + to_string(static_cast<RoomKind>(v)));
  out.push_back("icon/background");
  for (int v = 0; v < kIconKindCount; ++v)
    out.push_back(std::string("icon/") + to_string(static_cast<IconKind>(v)));
  return out;
}

}  // namespace channels

namespace {

void paint_disk(HeatmapStack& stack, int channel, const Vec2& center) {
  const int res = stack.resolution;
  const double r = kHeatmapDiskRadius;
  const int i0 = std::max(0, static_cast<int>(std::floor(center.y - r)));
  const int i1 = std::min(res - 1, static_cast<int>(std::ceil(center.y + r)));
  const int j0 = std::max(0, static_cast<int>(std::floor(center.x - r)));
  const int j1 = std::min(res - 1, static_cast<int>(std::ceil(center.x + r)));
  for (int i = i0; i <= i1; ++i) {
    for (int j = j0; j <= j1; ++j) {
      const double dx = j - center.x;
      const double dy = i - center.y;
      if (dx * dx + dy * dy <= r * r) stack.at(channel, i, j) = 1.0;  // max under overlap
    }
  }
}

// Orientation of an opening end-point: the direction toward the other end.
int opening_orientation_channel(const Vec2& from, const Vec2& to) {
  return channels::kOpeningBase + static_cast<int>(wall_direction_from(from, to));
}

}  // namespace

std::vector<std::pair<int, int>> rasterize_segment_strip(const Vec2& a, const Vec2& b, int width,
                                                         int resolution) {
  if (width < 1 || width % 2 == 0)
    throw std::invalid_argument("rasterize_segment_strip: width must be odd and positive");
  if (a == b) throw std::invalid_argument("rasterize_segment_strip: zero-length segment");
  const int half = (width - 1) / 2;
  const bool horizontal = std::abs(b.x - a.x) >= std::abs(b.y - a.y);
  std::vector<std::pair<int, int>> out;
  const auto clamp_lo = [](long v) { return static_cast<int>(std::max(0L, v)); };
  if (horizontal) {
    const int jc0 = clamp_lo(std::lround(std::min(a.x, b.x)));
    const int jc1 = std::min<long>(resolution - 1, std::lround(std::max(a.x, b.x)));
    const int ic = static_cast<int>(std::lround(0.5 * (a.y + b.y)));
    for (int i = std::max(0, ic - half); i <= std::min(resolution - 1, ic + half); ++i)
      for (int j = jc0; j <= jc1; ++j) out.emplace_back(i, j);
  } else {
    const int ic0 = clamp_lo(std::lround(std::min(a.y, b.y)));
    const int ic1 = std::min<long>(resolution - 1, std::lround(std::max(a.y, b.y)));
    const int jc = static_cast<int>(std::lround(0.5 * (a.x + b.x)));
    for (int j = std::max(0, jc - half); j <= std::min(resolution - 1, jc + half); ++j)
      for (int i = ic0; i <= ic1; ++i) out.emplace_back(i, j);
  }
  return out;
}

std::vector<std::pair<int, int>> rasterize_rect(const Rect& r, int resolution) {
  std::vector<std::pair<int, int>> out;
  const int i0 = std::max(0L, std::lround(r.ymin));
  const int i1 = std::min<long>(resolution - 1, std::lround(r.ymax));
  const int j0 = std::max(0L, std::lround(r.xmin));
  const int j1 = std::min<long>(resolution - 1, std::lround(r.xmax));
  for (int i = i0; i <= i1; ++i)
    for (int j = j0; j <= j1; ++j) out.emplace_back(i, j);
  return out;
}

HeatmapStack render_ground_truth(const Floorplan& plan) {
  if (!validate(plan).empty())
    throw std::invalid_argument("render_ground_truth: plan is invalid");

  HeatmapStack stack(kGridResolution, channels::kCount);
  stack.names = channels::names();
  const int res = stack.resolution;

  for (const Corner& c : plan.corners)
    paint_disk(stack, channels::kJunctionBase + static_cast<int>(c.junction), c.position);

  for (const Opening& o : plan.openings) {
    paint_disk(stack, opening_orientation_channel(o.p1, o.p2), o.p1);
    paint_disk(stack, opening_orientation_channel(o.p2, o.p1), o.p2);
  }

  for (const Icon& icon : plan.icons) {
    const Rect& r = icon.rect;
    paint_disk(stack, channels::kIconCornerBase + 0, {r.xmin, r.ymin});  // TL
    paint_disk(stack, channels::kIconCornerBase + 1, {r.xmax, r.ymin});  // TR
    paint_disk(stack, channels::kIconCornerBase + 2, {r.xmax, r.ymax});  // BR
    paint_disk(stack, channels::kIconCornerBase + 3, {r.xmin, r.ymax});  // BL
  }

  // Room semantics: background, then room fills in file order (later wins),
  // then the wall strip on top; one-hot per pixel throughout.
  std::vector<int> room_label(stack.plane_size(), 0);  // offsets into the room group
  for (const Room& room : plan.rooms) {
    const int label = 2 + static_cast<int>(room.kind);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < res; ++i) {
      for (int j = 0; j < res; ++j) {
        if (point_in_polygon({static_cast<double>(j), static_cast<double>(i)}, room.boundary))
          room_label[static_cast<size_t>(i) * res + j] = label;
      }
    }
  }
  for (const Wall& wall : plan.walls) {
    const Corner* a = plan.corner_by_id(wall.a);
    const Corner* b = plan.corner_by_id(wall.b);
    for (const auto& [i, j] : rasterize_segment_strip(a->position, b->position, 3, res))
      room_label[static_cast<size_t>(i) * res + j] = 1;
  }
  for (size_t px = 0; px < stack.plane_size(); ++px)
    stack.data[(channels::kRoomSemanticBase + room_label[px]) * stack.plane_size() + px] = 1.0;

  // Icon semantics: one-hot inside icon rects (later wins), else background.
  std::vector<int> icon_label(stack.plane_size(), 0);
  for (const Icon& icon : plan.icons) {
    const int label = 1 + static_cast<int>(icon.kind);
    for (const auto& [i, j] : rasterize_rect(icon.rect, res))
      icon_label[static_cast<size_t>(i) * res + j] = label;
  }
  for (size_t px = 0; px < stack.plane_size(); ++px)
    stack.data[(channels::kIconSemanticBase + icon_label[px]) * stack.plane_size() + px] = 1.0;

  return stack;
}

double sigmoid_ce(std::span<const double> logits, std::span<const double> labels) {
  if (logits.size() != labels.size() || logits.empty())
    throw std::invalid_argument("sigmoid_ce: shape mismatch");
  const long long n = static_cast<long long>(logits.size());
  double total = 0.0;
  // max(x,0) - x*y + log(1 + exp(-|x|)) is the stabilized form.
#pragma omp parallel for schedule(static) reduction(+ : total)
  for (long long i = 0; i < n; ++i) {
    const double x = logits[i];
    const double y = labels[i];
    total += std::max(x, 0.0) - x * y + std::log1p(std::exp(-std::abs(x)));
  }
  return total / static_cast<double>(n);
}

double softmax_ce(std::span<const double> logits, int classes, std::span<const int> labels) {
  if (classes < 1) throw std::invalid_argument("softmax_ce: classes must be >= 1");
  if (logits.size() != labels.size() * static_cast<size_t>(classes) || labels.empty())
    throw std::invalid_argument("softmax_ce: shape mismatch");
  for (int label : labels) {
    if (label < 0 || label >= classes)
      throw std::out_of_range("softmax_ce: label out of range");
  }
  const long long n = static_cast<long long>(labels.size());
  double total = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : total)
  for (long long i = 0; i < n; ++i) {
    const double* row = logits.data() + i * classes;
    double max_logit = row[0];
    for (int c = 1; c < classes; ++c) max_logit = std::max(max_logit, row[c]);
    double sum = 0.0;
    for (int c = 0; c < classes; ++c) sum += std::exp(row[c] - max_logit);
    total += -(row[labels[i]] - max_logit - std::log(sum));
  }
  return total / static_cast<double>(n);
}

namespace {

void write_u32(std::ofstream& out, uint32_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

uint32_t read_u32(std::ifstream& in, const std::string& path) {
  uint32_t v = 0;
  if (!in.read(reinterpret_cast<char*>(&v), sizeof(v)))
    throw std::runtime_error("truncated FHM1 file: " + path);
  return v;
}

}  // namespace

void save_heatmap(const HeatmapStack& stack, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write("FHM1", 4);
  write_u32(out, static_cast<uint32_t>(stack.resolution));
  write_u32(out, static_cast<uint32_t>(stack.channels));
  write_u32(out, 1);  // layout version

  const std::string names = nlohmann::json(stack.names).dump();
  write_u32(out, static_cast<uint32_t>(names.size()));
  out.write(names.data(), static_cast<std::streamsize>(names.size()));

  for (double v : stack.data) {
    const float f = static_cast<float>(v);
    out.write(reinterpret_cast<const char*>(&f), sizeof(f));
  }
}

HeatmapStack load_heatmap(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, "FHM1", 4) != 0)
    throw std::runtime_error("bad FHM1 magic in " + path);
  const uint32_t resolution = read_u32(in, path);
  const uint32_t k = read_u32(in, path);
  const uint32_t layout = read_u32(in, path);
  if (layout != 1)
    throw std::runtime_error("unsupported FHM1 layout version in " + path);
  const uint32_t names_len = read_u32(in, path);
  std::string names_json(names_len, '\0');
  if (!in.read(names_json.data(), names_len))
    throw std::runtime_error("truncated FHM1 file: " + path);

  HeatmapStack stack(static_cast<int>(resolution), static_cast<int>(k));
  try {
    for (const auto& name : nlohmann::json::parse(names_json))
      stack.names.push_back(name.get<std::string>());
  } catch (const nlohmann::json::exception&) {
    throw std::runtime_error("malformed FHM1 channel-name table in " + path);
  }
  if (stack.names.size() != k)
    throw std::runtime_error("FHM1 channel-name count mismatch in " + path);

  for (double& v : stack.data) {
    float f = 0.0f;
    if (!in.read(reinterpret_cast<char*>(&f), sizeof(f)))
      throw std::runtime_error("truncated FHM1 file: " + path);
    v = f;
  }
  return stack;
}

}  // namespace vecplan
