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

#include "vecplan/geometry.hpp"

#include <algorithm>
#include <cassert>

namespace vecplan {

double rect_intersection_area(const Rect& a, const Rect& b) {
  const double w = std::min(a.xmax, b.xmax) - std::max(a.xmin, b.xmin);
  const double h = std::min(a.ymax, b.ymax) - std::max(a.ymin, b.ymin);
  if (w <= 0.0 || h <= 0.0) return 0.0;
  return w * h;
}

double rect_iou(const Rect& a, const Rect& b) {
  const double inter = rect_intersection_area(a, b);
  const double uni = a.area() + b.area() - inter;
  if (uni <= 0.0) return 0.0;
  return inter / uni;
}

Vec2 direction_vector(Direction d) {
  switch (d) {
    case Direction::PosX: return {1.0, 0.0};
    case Direction::PosY: return {0.0, 1.0};
    case Direction::NegX: return {-1.0, 0.0};
    case Direction::NegY: return {0.0, -1.0};
  }
  return {};
}

const char* to_string(Direction d) {
  switch (d) {
    case Direction::PosX: return "+X";
    case Direction::PosY: return "+Y";
    case Direction::NegX: return "-X";
    case Direction::NegY: return "-Y";
  }
  return "?";
}

namespace {

struct JunctionInfo {
  char base;        // 'I', 'L', 'T', 'X'
  int orientation;  // quarter turns
};

JunctionInfo junction_info(JunctionType t) {
  const int v = static_cast<int>(t);
  if (v < 4) return {'I', v};
  if (v < 8) return {'L', v - 4};
  if (v < 12) return {'T', v - 8};
  return {'X', 0};
}

DirSet base_directions(char base) {
  switch (base) {
    case 'I': return DirSet{Direction::PosX};
    case 'L': return DirSet{Direction::PosX, Direction::PosY};
    case 'T': return DirSet{Direction::PosX, Direction::NegX, Direction::PosY};
    default:
      return DirSet{Direction::PosX, Direction::PosY, Direction::NegX, Direction::NegY};
  }
}

}  // namespace

DirSet junction_directions(JunctionType t) {
  const JunctionInfo info = junction_info(t);
  return base_directions(info.base).rotated_by(info.orientation);
}

std::optional<JunctionType> junction_from_directions(DirSet dirs) {
  for (int v = 0; v < kJunctionTypeCount; ++v) {
    const auto t = static_cast<JunctionType>(v);
    if (junction_directions(t) == dirs) return t;
  }
  return std::nullopt;
}

JunctionType rotated(JunctionType t, int quarter_turns) {
  const JunctionInfo info = junction_info(t);
  if (info.base == 'X') return t;
  const int orientation = (info.orientation + quarter_turns) % 4;
  const int base_index = info.base == 'I' ? 0 : info.base == 'L' ? 4 : 8;
  return static_cast<JunctionType>(base_index + orientation);
}

std::string to_string(JunctionType t) {
  const JunctionInfo info = junction_info(t);
  if (info.base == 'X') return "X";
  return std::string(1, info.base) + "_" + std::to_string(info.orientation * 90);
}

std::optional<JunctionType> junction_from_string(const std::string& name) {
  for (int v = 0; v < kJunctionTypeCount; ++v) {
    const auto t = static_cast<JunctionType>(v);
    if (to_string(t) == name) return t;
  }
  return std::nullopt;
}

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return distance(p, a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + ab * t);
}

double polygon_signed_area(const std::vector<Vec2>& poly) {
  double sum = 0.0;
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % n];
    sum += p.x * q.y - q.x * p.y;
  }
  return 0.5 * sum;
}

double polygon_area(const std::vector<Vec2>& poly) {
  return std::abs(polygon_signed_area(poly));
}

namespace {

bool on_segment(const Vec2& p, const Vec2& a, const Vec2& b, double eps = 1e-9) {
  return point_segment_distance(p, a, b) <= eps;
}

int orientation_sign(const Vec2& a, const Vec2& b, const Vec2& c) {
  const double v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  if (v > 1e-12) return 1;
  if (v < -1e-12) return -1;
  return 0;
}

bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  const int o1 = orientation_sign(a, b, c);
  const int o2 = orientation_sign(a, b, d);
  const int o3 = orientation_sign(c, d, a);
  const int o4 = orientation_sign(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(c, a, b)) return true;
  if (o2 == 0 && on_segment(d, a, b)) return true;
  if (o3 == 0 && on_segment(a, c, d)) return true;
  if (o4 == 0 && on_segment(b, c, d)) return true;
  return false;
}

}  // namespace

bool point_in_polygon(const Vec2& p, const std::vector<Vec2>& poly) {
  const size_t n = poly.size();
  if (n < 3) return false;
  for (size_t i = 0; i < n; ++i) {
    if (on_segment(p, poly[i], poly[(i + 1) % n])) return true;
  }
  // Even-odd ray cast toward +x, half-open in y to avoid double counting.
  bool inside = false;
  for (size_t i = 0; i < n; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % n];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (x_cross > p.x) inside = !inside;
    }
  }
  return inside;
}

bool polygon_is_simple(const std::vector<Vec2>& poly) {
  const size_t n = poly.size();
  if (n < 3) return false;
  for (size_t i = 0; i < n; ++i) {
    if (poly[i] == poly[(i + 1) % n]) return false;  // zero-length edge
  }
  for (size_t i = 0; i < n; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % n];
    for (size_t j = i + 1; j < n; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      const Vec2& c = poly[j];
      const Vec2& d = poly[(j + 1) % n];
      if (adjacent) {
        // Shared endpoint is fine; any further contact is not.
        const Vec2& shared = (j == i + 1) ? b : a;
        const Vec2& far_ab = (j == i + 1) ? a : b;
        const Vec2& far_cd = (j == i + 1) ? d : c;
        if (on_segment(far_ab, c, d) && far_ab != shared) return false;
        if (on_segment(far_cd, a, b) && far_cd != shared) return false;
        continue;
      }
      if (segments_intersect(a, b, c, d)) return false;
    }
  }
  return true;
}

double polygon_intersection_area(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
  if (a.size() < 3 || b.size() < 3) return 0.0;
  // Compressed grid: cut the plane at every vertex coordinate of both
  // polygons, then classify each cell by its center. Exact for rectilinear
  // polygons because membership is constant inside each cell.
  std::vector<double> xs, ys;
  for (const auto* poly : {&a, &b}) {
    for (const Vec2& v : *poly) {
      xs.push_back(v.x);
      ys.push_back(v.y);
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

  double inter = 0.0;
  for (size_t i = 0; i + 1 < xs.size(); ++i) {
    for (size_t j = 0; j + 1 < ys.size(); ++j) {
      const Vec2 center{0.5 * (xs[i] + xs[i + 1]), 0.5 * (ys[j] + ys[j + 1])};
      if (point_in_polygon(center, a) && point_in_polygon(center, b)) {
        inter += (xs[i + 1] - xs[i]) * (ys[j + 1] - ys[j]);
      }
    }
  }
  return inter;
}

double polygon_iou(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
  const double inter = polygon_intersection_area(a, b);
  const double uni = polygon_area(a) + polygon_area(b) - inter;
  if (uni <= 0.0) return 0.0;
  return inter / uni;
}

}  // namespace vecplan
