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

#include "vecplan/floorplan.hpp"

#include <cmath>
#include <unordered_map>

namespace vecplan {

namespace {

constexpr const char* kOpeningNames[] = {"door", "window"};
constexpr const char* kIconNames[] = {
    "counter", "bathtub", "toilet", "sink", "sofa",
    "cabinet", "bed", "table", "refrigerator",
};
constexpr const char* kRoomNames[] = {
    "living room", "kitchen", "bedroom", "bathroom",
    "closet", "balcony", "corridor", "dining room",
};

bool in_canvas(const Vec2& p) {
  return p.x >= 0.0 && p.x < kGridResolution && p.y >= 0.0 && p.y < kGridResolution;
}

}  // namespace

const Corner* Floorplan::corner_by_id(int id) const {
  for (const Corner& c : corners)
    if (c.id == id) return &c;
  return nullptr;
}

const char* to_string(OpeningKind k) { return kOpeningNames[static_cast<int>(k)]; }
const char* to_string(IconKind k) { return kIconNames[static_cast<int>(k)]; }
const char* to_string(RoomKind k) { return kRoomNames[static_cast<int>(k)]; }

std::optional<OpeningKind> opening_kind_from_string(const std::string& s) {
  for (int i = 0; i < 2; ++i)
    if (s == kOpeningNames[i]) return static_cast<OpeningKind>(i);
  return std::nullopt;
}

std::optional<IconKind> icon_kind_from_string(const std::string& s) {
  for (int i = 0; i < kIconKindCount; ++i)
    if (s == kIconNames[i]) return static_cast<IconKind>(i);
  return std::nullopt;
}

std::optional<RoomKind> room_kind_from_string(const std::string& s) {
  for (int i = 0; i < kRoomKindCount; ++i)
    if (s == kRoomNames[i]) return static_cast<RoomKind>(i);
  return std::nullopt;
}

Direction wall_direction_from(const Vec2& from, const Vec2& to) {
  const double dx = to.x - from.x;
  const double dy = to.y - from.y;
  if (std::abs(dx) >= std::abs(dy)) return dx >= 0.0 ? Direction::PosX : Direction::NegX;
  return dy >= 0.0 ? Direction::PosY : Direction::NegY;
}

std::vector<Violation> validate(const Floorplan& plan) {
  std::vector<Violation> out;
  const auto flag = [&out](std::string entity, std::string message) {
    out.push_back({std::move(entity), std::move(message)});
  };

  std::unordered_map<int, const Corner*> by_id;
  for (size_t i = 0; i < plan.corners.size(); ++i) {
    const Corner& c = plan.corners[i];
    const std::string name = "corner " + std::to_string(c.id);
    if (by_id.count(c.id)) flag(name, "duplicate corner id");
    by_id[c.id] = &c;
    if (!in_canvas(c.position)) flag(name, "position outside [0,256)^2");
    if (junction_directions(c.junction).empty()) flag(name, "empty junction direction set");
  }

  // Incident wall directions per corner id.
  std::unordered_map<int, DirSet> incident;
  std::unordered_map<int, int> degree;

  for (size_t i = 0; i < plan.walls.size(); ++i) {
    const Wall& w = plan.walls[i];
    const std::string name = "wall " + std::to_string(i);
    if (w.a == w.b) {
      flag(name, "endpoints not distinct");
      continue;
    }
    const auto ita = by_id.find(w.a);
    const auto itb = by_id.find(w.b);
    if (ita == by_id.end() || itb == by_id.end()) {
      flag(name, "dangling corner id");
      continue;
    }
    const Vec2& pa = ita->second->position;
    const Vec2& pb = itb->second->position;
    if (pa == pb) {
      flag(name, "zero-length wall");
      continue;
    }
    const bool horizontal = std::abs(pa.y - pb.y) <= kAxisTolerance;
    const bool vertical = std::abs(pa.x - pb.x) <= kAxisTolerance;
    if (!horizontal && !vertical) flag(name, "not axis-aligned");
    incident[w.a].add(wall_direction_from(pa, pb));
    incident[w.b].add(wall_direction_from(pb, pa));
    degree[w.a] += 1;
    degree[w.b] += 1;
  }

  for (const Corner& c : plan.corners) {
    const std::string name = "corner " + std::to_string(c.id);
    const DirSet expected = junction_directions(c.junction);
    if (incident[c.id] != expected) flag(name, "junction/incidence mismatch");
    if (degree[c.id] != expected.size())
      flag(name, "wall degree does not match junction class");
  }

  for (size_t i = 0; i < plan.openings.size(); ++i) {
    const Opening& o = plan.openings[i];
    const std::string name = "opening " + std::to_string(i);
    if (o.wall < 0 || o.wall >= static_cast<int>(plan.walls.size())) {
      flag(name, "dangling wall id");
      continue;
    }
    const Wall& w = plan.walls[o.wall];
    const Corner* a = plan.corner_by_id(w.a);
    const Corner* b = plan.corner_by_id(w.b);
    if (a == nullptr || b == nullptr) continue;  // reported on the wall already
    for (const Vec2& p : {o.p1, o.p2}) {
      if (point_segment_distance(p, a->position, b->position) > kAxisTolerance) {
        flag(name, "end-point not on host wall");
        break;
      }
    }
  }

  for (size_t i = 0; i < plan.icons.size(); ++i) {
    const Icon& icon = plan.icons[i];
    const std::string name = "icon " + std::to_string(i);
    if (icon.rect.width() <= 0.0 || icon.rect.height() <= 0.0)
      flag(name, "rect has non-positive area");
    if (!(icon.rect.xmin >= 0.0 && icon.rect.ymin >= 0.0 &&
          icon.rect.xmax < kGridResolution && icon.rect.ymax < kGridResolution))
      flag(name, "rect outside [0,256)^2");
  }

  for (size_t i = 0; i < plan.rooms.size(); ++i) {
    const Room& r = plan.rooms[i];
    const std::string name = "room " + std::to_string(i);
    if (r.boundary.size() < 3) {
      flag(name, "boundary has fewer than 3 vertices");
      continue;
    }
    if (!polygon_is_simple(r.boundary)) flag(name, "boundary not a simple polygon");
    const double area = polygon_signed_area(r.boundary);
    if (std::abs(area) <= 0.0) flag(name, "zero area");
    else if (area < 0.0) flag(name, "boundary not counter-clockwise");
  }

  return out;
}

}  // namespace vecplan
