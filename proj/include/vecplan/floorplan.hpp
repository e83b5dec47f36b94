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

#include <optional>
#include <string>
#include <vector>

#include "vecplan/geometry.hpp"

namespace vecplan {

inline constexpr double kDefaultWallThickness = 3.0;

struct Corner {
  int id = 0;
  Vec2 position;  // grid pixels, continuous, in [0, 256)^2
  JunctionType junction = JunctionType::X;
  bool operator==(const Corner&) const = default;
};

struct Wall {
  int a = 0;  // corner ids
  int b = 0;
  double thickness = kDefaultWallThickness;  // render-only
  bool operator==(const Wall&) const = default;
};

enum class OpeningKind : int { Door = 0, Window = 1 };

struct Opening {
  OpeningKind kind = OpeningKind::Door;
  Vec2 p1, p2;   // grid pixels, on the host wall
  int wall = 0;  // index into Floorplan::walls
  bool operator==(const Opening&) const = default;
};

enum class IconKind : int {
  Counter = 0, Bathtub, Toilet, Sink, Sofa, Cabinet, Bed, Table, Refrigerator,
};
inline constexpr int kIconKindCount = 9;

struct Icon {
  IconKind kind = IconKind::Table;
  Rect rect;  // grid pixels
  bool operator==(const Icon&) const = default;
};

enum class RoomKind : int {
  LivingRoom = 0, Kitchen, Bedroom, Bathroom, Closet, Balcony, Corridor, DiningRoom,
};
inline constexpr int kRoomKindCount = 8;

struct Room {
  RoomKind kind = RoomKind::LivingRoom;
  std::vector<Vec2> boundary;  // simple polygon, counter-clockwise
  bool operator==(const Room&) const = default;
};

struct Floorplan {
  std::vector<Corner> corners;
  std::vector<Wall> walls;
  std::vector<Opening> openings;
  std::vector<Icon> icons;
  std::vector<Room> rooms;
  std::optional<FloorplanDomain> domain;  // present when derived from a scan

  const Corner* corner_by_id(int id) const;
  bool operator==(const Floorplan&) const = default;
};

const char* to_string(OpeningKind k);
const char* to_string(IconKind k);
const char* to_string(RoomKind k);
std::optional<OpeningKind> opening_kind_from_string(const std::string& s);
std::optional<IconKind> icon_kind_from_string(const std::string& s);
std::optional<RoomKind> room_kind_from_string(const std::string& s);

// Dominant axis direction of the wall as seen from corner `from`.
Direction wall_direction_from(const Vec2& from, const Vec2& to);

struct Violation {
  std::string entity;   // e.g. "corner 3", "wall 0"
  std::string message;  // which invariant is broken
};

// Returns one entry per broken invariant; empty means the plan is valid.
// Violations are data, not errors.
std::vector<Violation> validate(const Floorplan& plan);

}  // namespace vecplan
