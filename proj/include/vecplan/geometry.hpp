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

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace vecplan {

inline constexpr int kGridResolution = 256;
// Walls must be axis-aligned within this many pixels; also the snapping
// tolerance used when pairing opening end-points and assembling icon rects.
inline constexpr double kAxisTolerance = 3.0;
// Corner detections match ground truth below this distance (pixels).
inline constexpr double kCornerMatchRadius = 10.0;
// Ground-truth geometry heatmaps paint 1.0 inside a disk of this radius.
inline constexpr double kHeatmapDiskRadius = 11.0;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  bool operator==(const Vec2& o) const = default;
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  bool operator==(const Vec3& o) const = default;
};

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double norm(const Vec2& v) { return std::hypot(v.x, v.y); }
inline double distance(const Vec2& a, const Vec2& b) { return norm(a - b); }

struct Rect {
  double xmin = 0.0, ymin = 0.0, xmax = 0.0, ymax = 0.0;

  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  double area() const { return width() * height(); }
  bool contains(const Vec2& p) const {
    return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
  }
  bool operator==(const Rect& o) const = default;
};

// Intersection area of two axis-aligned rectangles (exact arithmetic).
double rect_intersection_area(const Rect& a, const Rect& b);
double rect_iou(const Rect& a, const Rect& b);

// Axis directions in the grid frame: +X is increasing column, +Y increasing
// row. Values are quarter-turn indices so rotation is modular arithmetic.
enum class Direction : int { PosX = 0, PosY = 1, NegX = 2, NegY = 3 };

inline Direction rotated(Direction d, int quarter_turns) {
  return static_cast<Direction>((static_cast<int>(d) + quarter_turns) % 4);
}

inline Direction opposite(Direction d) { return rotated(d, 2); }

Vec2 direction_vector(Direction d);
const char* to_string(Direction d);

// Set of incident wall directions at a corner, as a 4-bit mask.
class DirSet {
 public:
  DirSet() = default;
  explicit DirSet(std::initializer_list<Direction> dirs) {
    for (Direction d : dirs) add(d);
  }

  void add(Direction d) { bits_ |= mask(d); }
  bool contains(Direction d) const { return bits_ & mask(d); }
  int size() const { return __builtin_popcount(bits_); }
  bool empty() const { return bits_ == 0; }
  uint8_t bits() const { return bits_; }

  DirSet rotated_by(int quarter_turns) const {
    DirSet out;
    for (int i = 0; i < 4; ++i)
      if (bits_ & (1u << i)) out.add(rotated(static_cast<Direction>(i), quarter_turns));
    return out;
  }

  std::vector<Direction> list() const {
    std::vector<Direction> out;
    for (int i = 0; i < 4; ++i)
      if (bits_ & (1u << i)) out.push_back(static_cast<Direction>(i));
    return out;
  }

  bool operator==(const DirSet& o) const = default;

 private:
  static uint8_t mask(Direction d) { return static_cast<uint8_t>(1u << static_cast<int>(d)); }
  uint8_t bits_ = 0;
};

// The 13 room-corner junction variants: I/L/T at four orientations plus X.
// The enum order is the heatmap channel order.
enum class JunctionType : int {
  I0 = 0, I90, I180, I270,
  L0, L90, L180, L270,
  T0, T90, T180, T270,
  X,
};

inline constexpr int kJunctionTypeCount = 13;

// Base direction sets (orientation 0), rotated CCW by the orientation:
//   I0 = {+X}, L0 = {+X,+Y}, T0 = {+X,-X,+Y} (missing -Y), X = all four.
DirSet junction_directions(JunctionType t);
std::optional<JunctionType> junction_from_directions(DirSet dirs);
JunctionType rotated(JunctionType t, int quarter_turns);
std::string to_string(JunctionType t);
std::optional<JunctionType> junction_from_string(const std::string& name);

// Invertible map between world XY (meters) and the square pixel grid.
// Pixel (row i, col j) covers the half-open world square
// [origin.x + j*scale, origin.x + (j+1)*scale) x [origin.y + i*scale, ...).
struct FloorplanDomain {
  Vec2 origin;
  double scale = 1.0;  // meters per pixel, isotropic
  int resolution = kGridResolution;

  Vec2 world_to_grid(double wx, double wy) const {
    return {(wx - origin.x) / scale, (wy - origin.y) / scale};
  }
  Vec2 grid_to_world(const Vec2& g) const {
    return {origin.x + g.x * scale, origin.y + g.y * scale};
  }
  // Cell indices, or nullopt when the point falls outside the grid.
  std::optional<std::pair<int, int>> cell_of(double wx, double wy) const {
    const double gx = (wx - origin.x) / scale;
    const double gy = (wy - origin.y) / scale;
    const int j = static_cast<int>(std::floor(gx));
    const int i = static_cast<int>(std::floor(gy));
    if (i < 0 || i >= resolution || j < 0 || j >= resolution) return std::nullopt;
    return std::make_pair(i, j);
  }
  bool operator==(const FloorplanDomain& o) const = default;
};

// Distance from point p to the segment [a, b].
double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b);

// Signed polygon area (positive = counter-clockwise in standard math axes).
double polygon_signed_area(const std::vector<Vec2>& poly);

// Boundary-inclusive point-in-polygon test (even-odd rule).
bool point_in_polygon(const Vec2& p, const std::vector<Vec2>& poly);

// True when the polygon has >= 3 vertices and no two non-adjacent edges
// intersect (adjacent edges may share only their common vertex).
bool polygon_is_simple(const std::vector<Vec2>& poly);

// Area of intersection / union for simple polygons. Exact for rectilinear
// polygons (computed on the compressed coordinate grid), an approximation
// otherwise.
double polygon_intersection_area(const std::vector<Vec2>& a, const std::vector<Vec2>& b);
double polygon_area(const std::vector<Vec2>& poly);
double polygon_iou(const std::vector<Vec2>& a, const std::vector<Vec2>& b);

}  // namespace vecplan
