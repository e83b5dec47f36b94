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

#include "vecplan/synth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "vecplan/extract.hpp"
#include "vecplan/rng.hpp"

namespace vecplan {

namespace {

constexpr double kMinRoomSideM = 1.5;
constexpr double kDoorLengthM = 0.9;
constexpr double kWindowLengthM = 1.2;
constexpr double kOpeningMarginM = 0.25;
// Opening end-points of equal orientation must stay farther apart than the
// heatmap disk diameter or their components merge during extraction.
constexpr double kOpeningSpacingM = 1.2;
constexpr double kIconWallMarginM = 0.25;
constexpr double kIconGapM = 0.45;
constexpr double kWallHeightM = 2.5;

struct RectM {  // rectangle in meters
  double x0, y0, x1, y1;
  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }
};

// Binary space partition into at least `target` leaves where feasible.
std::vector<RectM> split_rooms(Rng& rng, double width, double height, int target) {
  std::vector<RectM> leaves{{0.0, 0.0, width, height}};
  while (static_cast<int>(leaves.size()) < target) {
    // Largest splittable leaf; a leaf splits when its longer side can hold
    // two minimum-size rooms.
    int pick = -1;
    for (size_t i = 0; i < leaves.size(); ++i) {
      const double longer = std::max(leaves[i].width(), leaves[i].height());
      if (longer < 2.0 * kMinRoomSideM) continue;
      if (pick < 0 || leaves[i].area() > leaves[pick].area()) pick = static_cast<int>(i);
    }
    if (pick < 0) break;
    RectM leaf = leaves[pick];
    const bool split_x = leaf.width() >= leaf.height();
    const double span = split_x ? leaf.width() : leaf.height();
    const double offset = rng.uniform(kMinRoomSideM, span - kMinRoomSideM);
    RectM a = leaf, b = leaf;
    if (split_x) {
      a.x1 = leaf.x0 + offset;
      b.x0 = leaf.x0 + offset;
    } else {
      a.y1 = leaf.y0 + offset;
      b.y0 = leaf.y0 + offset;
    }
    leaves[pick] = a;
    leaves.push_back(b);
  }
  return leaves;
}

struct Interval {
  double lo, hi;
};

std::vector<Interval> merge_intervals(std::vector<Interval> intervals) {
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> merged;
  for (const Interval& iv : intervals) {
    if (!merged.empty() && iv.lo <= merged.back().hi + 1e-9)
      merged.back().hi = std::max(merged.back().hi, iv.hi);
    else
      merged.push_back(iv);
  }
  return merged;
}

bool covers(const std::vector<Interval>& intervals, double lo, double hi) {
  for (const Interval& iv : intervals)
    if (iv.lo <= lo + 1e-9 && iv.hi >= hi - 1e-9) return true;
  return false;
}

// Wall graph (corners + walls) of a rectangle partition, all coordinates
// integer pixels.
struct WallGraph {
  std::vector<Corner> corners;
  std::vector<Wall> walls;
};

WallGraph build_wall_graph(const std::vector<Rect>& rooms_px) {
  // Coverage of wall lines: x -> vertical intervals, y -> horizontal ones.
  std::map<double, std::vector<Interval>> vertical, horizontal;
  for (const Rect& r : rooms_px) {
    vertical[r.xmin].push_back({r.ymin, r.ymax});
    vertical[r.xmax].push_back({r.ymin, r.ymax});
    horizontal[r.ymin].push_back({r.xmin, r.xmax});
    horizontal[r.ymax].push_back({r.xmin, r.xmax});
  }
  for (auto& [x, ivs] : vertical) ivs = merge_intervals(std::move(ivs));
  for (auto& [y, ivs] : horizontal) ivs = merge_intervals(std::move(ivs));

  const auto covered_at = [](const std::vector<Interval>& ivs, double a, double b) {
    return covers(ivs, a, b);
  };

  // A lattice point is a corner when its incident direction set is neither
  // empty nor a straight pass-through.
  std::vector<Corner> corners;
  std::map<std::pair<double, double>, int> corner_ids;
  for (const auto& [x, vints] : vertical) {
    for (const auto& [y, hints] : horizontal) {
      DirSet dirs;
      if (covered_at(hints, x, x + 0.5)) dirs.add(Direction::PosX);
      if (covered_at(hints, x - 0.5, x)) dirs.add(Direction::NegX);
      if (covered_at(vints, y, y + 0.5)) dirs.add(Direction::PosY);
      if (covered_at(vints, y - 0.5, y)) dirs.add(Direction::NegY);
      if (dirs.empty()) continue;
      const auto junction = junction_from_directions(dirs);
      if (!junction) continue;  // straight pass-through, not a corner
      const int id = static_cast<int>(corners.size());
      corners.push_back({id, {x, y}, *junction});
      corner_ids[{x, y}] = id;
    }
  }
  std::sort(corners.begin(), corners.end(), [](const Corner& a, const Corner& b) {
    return std::tie(a.position.y, a.position.x) < std::tie(b.position.y, b.position.x);
  });
  corner_ids.clear();
  for (size_t i = 0; i < corners.size(); ++i) {
    corners[i].id = static_cast<int>(i);
    corner_ids[{corners[i].position.x, corners[i].position.y}] = corners[i].id;
  }

  // Walls: consecutive corners along each covered line.
  WallGraph graph;
  graph.corners = corners;
  for (const auto& [x, ivs] : vertical) {
    std::vector<std::pair<double, int>> on_line;  // (y, corner id)
    for (const Corner& c : corners)
      if (c.position.x == x) on_line.emplace_back(c.position.y, c.id);
    std::sort(on_line.begin(), on_line.end());
    for (size_t i = 0; i + 1 < on_line.size(); ++i) {
      if (covers(ivs, on_line[i].first, on_line[i + 1].first))
        graph.walls.push_back({on_line[i].second, on_line[i + 1].second, kDefaultWallThickness});
    }
  }
  for (const auto& [y, ivs] : horizontal) {
    std::vector<std::pair<double, int>> on_line;  // (x, corner id)
    for (const Corner& c : corners)
      if (c.position.y == y) on_line.emplace_back(c.position.x, c.id);
    std::sort(on_line.begin(), on_line.end());
    for (size_t i = 0; i + 1 < on_line.size(); ++i) {
      if (covers(ivs, on_line[i].first, on_line[i + 1].first))
        graph.walls.push_back({on_line[i].second, on_line[i + 1].second, kDefaultWallThickness});
    }
  }
  std::sort(graph.walls.begin(), graph.walls.end(),
            [](const Wall& a, const Wall& b) { return std::tie(a.a, a.b) < std::tie(b.a, b.b); });
  return graph;
}

RoomKind sample_room_kind(Rng& rng, int index) {
  if (index == 0) return RoomKind::LivingRoom;  // largest room
  if (index == 1) return RoomKind::Kitchen;
  const double u = rng.uniform();
  if (u < 0.34) return RoomKind::Bedroom;
  if (u < 0.56) return RoomKind::Bathroom;
  if (u < 0.68) return RoomKind::Closet;
  if (u < 0.78) return RoomKind::Corridor;
  if (u < 0.90) return RoomKind::DiningRoom;
  return RoomKind::Balcony;
}

struct IconSpec {
  IconKind kind;
  double w, h;  // meters
};

IconSpec sample_icon_spec(Rng& rng, RoomKind room) {
  const double u = rng.uniform();
  IconSpec spec{IconKind::Cabinet, 0.6, rng.uniform(0.8, 1.6)};
  switch (room) {
    case RoomKind::LivingRoom:
      if (u < 0.40) spec = {IconKind::Sofa, 0.9, rng.uniform(1.6, 2.2)};
      else if (u < 0.70) spec = {IconKind::Table, rng.uniform(0.8, 1.2), rng.uniform(0.8, 1.6)};
      break;
    case RoomKind::Kitchen:
      if (u < 0.35) spec = {IconKind::Counter, 0.6, rng.uniform(1.2, 2.4)};
      else if (u < 0.55) spec = {IconKind::Sink, 0.45, 0.55};
      else if (u < 0.80) spec = {IconKind::Refrigerator, 0.7, 0.75};
      break;
    case RoomKind::Bedroom:
      if (u < 0.50) spec = {IconKind::Bed, rng.uniform(1.4, 1.8), 2.0};
      else if (u < 0.80) spec = {IconKind::Cabinet, 0.6, rng.uniform(0.8, 1.6)};
      else spec = {IconKind::Table, rng.uniform(0.8, 1.2), rng.uniform(0.8, 1.2)};
      break;
    case RoomKind::Bathroom:
      if (u < 0.35) spec = {IconKind::Toilet, 0.4, 0.65};
      else if (u < 0.65) spec = {IconKind::Sink, 0.45, 0.55};
      else spec = {IconKind::Bathtub, 0.75, 1.6};
      break;
    case RoomKind::DiningRoom:
      if (u < 0.60) spec = {IconKind::Table, rng.uniform(0.9, 1.2), rng.uniform(1.0, 1.8)};
      else if (u < 0.80) spec = {IconKind::Counter, 0.6, rng.uniform(1.2, 2.0)};
      break;
    case RoomKind::Balcony:
      if (u < 0.50) spec = {IconKind::Table, rng.uniform(0.8, 1.0), rng.uniform(0.8, 1.0)};
      break;
    default:
      break;  // closet / corridor keep the cabinet default
  }
  if (rng.bernoulli(0.5)) std::swap(spec.w, spec.h);
  return spec;
}

struct OpeningSlot {
  int wall_index;
  double lo, hi;  // free coordinate range along the wall (pixels)
};

// One generation attempt; fails (returns false) when door placement cannot
// keep the room graph connected.
bool generate_once(const SynthConfig& config, uint64_t attempt, Floorplan& plan) {
  Rng rng(derive_seed(config.seed, attempt));
  plan = Floorplan{};

  const int target_rooms =
      std::clamp(static_cast<int>(std::lround(rng.gaussian(config.room_count_mean,
                                                           config.room_count_std))),
                 1, 12);
  const double area = std::clamp(rng.gaussian(config.area_mean_m2, config.area_std_m2), 30.0, 105.0);
  const double aspect = rng.uniform(1.0, 1.3);
  double width_m = std::sqrt(area * aspect);
  double height_m = area / width_m;
  if (rng.bernoulli(0.5)) std::swap(width_m, height_m);

  const std::vector<RectM> rooms_m = split_rooms(rng, width_m, height_m, target_rooms);

  // Physical domain: expand the footprint 5% per side, center on the grid.
  FloorplanDomain domain;
  const double ew = 1.1 * width_m, eh = 1.1 * height_m;
  domain.scale = std::max(ew, eh) / kGridResolution;
  domain.origin = {-0.05 * width_m - 0.5 * (kGridResolution - ew / domain.scale) * domain.scale,
                   -0.05 * height_m - 0.5 * (kGridResolution - eh / domain.scale) * domain.scale};

  // Snap every partition coordinate to an integer pixel, consistently.
  std::map<double, double> snap_x, snap_y;
  for (const RectM& r : rooms_m) {
    for (double x : {r.x0, r.x1}) snap_x.emplace(x, std::round((x - domain.origin.x) / domain.scale));
    for (double y : {r.y0, r.y1}) snap_y.emplace(y, std::round((y - domain.origin.y) / domain.scale));
  }
  const double px_per_m = 1.0 / domain.scale;

  std::vector<Rect> rooms_px;
  for (const RectM& r : rooms_m)
    rooms_px.push_back({snap_x.at(r.x0), snap_y.at(r.y0), snap_x.at(r.x1), snap_y.at(r.y1)});

  WallGraph graph = build_wall_graph(rooms_px);
  plan.corners = graph.corners;
  plan.walls = graph.walls;
  plan.domain = domain;

  // Room types: assign by descending area.
  std::vector<int> by_area(rooms_px.size());
  for (size_t i = 0; i < by_area.size(); ++i) by_area[i] = static_cast<int>(i);
  std::sort(by_area.begin(), by_area.end(), [&rooms_px](int a, int b) {
    return rooms_px[a].area() > rooms_px[b].area();
  });
  std::vector<RoomKind> kinds(rooms_px.size());
  for (size_t rank = 0; rank < by_area.size(); ++rank)
    kinds[by_area[rank]] = sample_room_kind(rng, static_cast<int>(rank));
  for (size_t i = 0; i < rooms_px.size(); ++i) {
    const Rect& r = rooms_px[i];
    plan.rooms.push_back(
        {kinds[i], {{r.xmin, r.ymin}, {r.xmax, r.ymin}, {r.xmax, r.ymax}, {r.xmin, r.ymax}}});
  }

  // Doors: spanning tree over the adjacency graph of rooms sharing enough
  // boundary to host a door.
  const double door_px = kDoorLengthM * px_per_m;
  const double margin_px = kOpeningMarginM * px_per_m;
  const double spacing_px = kOpeningSpacingM * px_per_m;

  struct Adjacency {
    int a, b;            // room indices
    bool vertical;       // boundary is a vertical line
    double line;         // x (vertical) or y (horizontal) of the boundary
    double lo, hi;       // shared range along the boundary
  };
  std::vector<Adjacency> adjacencies;
  for (size_t i = 0; i < rooms_px.size(); ++i) {
    for (size_t j = i + 1; j < rooms_px.size(); ++j) {
      const Rect& a = rooms_px[i];
      const Rect& b = rooms_px[j];
      const double need = door_px + 2.0 * margin_px;
      if (a.xmax == b.xmin || b.xmax == a.xmin) {
        const double line = a.xmax == b.xmin ? a.xmax : b.xmax;
        const double lo = std::max(a.ymin, b.ymin), hi = std::min(a.ymax, b.ymax);
        if (hi - lo >= need)
          adjacencies.push_back({static_cast<int>(i), static_cast<int>(j), true, line, lo, hi});
      }
      if (a.ymax == b.ymin || b.ymax == a.ymin) {
        const double line = a.ymax == b.ymin ? a.ymax : b.ymax;
        const double lo = std::max(a.xmin, b.xmin), hi = std::min(a.xmax, b.xmax);
        if (hi - lo >= need)
          adjacencies.push_back({static_cast<int>(i), static_cast<int>(j), false, line, lo, hi});
      }
    }
  }

  // BFS spanning tree from room 0.
  std::vector<int> component(rooms_px.size(), -1);
  std::vector<const Adjacency*> tree_edges;
  component[0] = 0;
  bool grown = true;
  while (grown) {
    grown = false;
    for (const Adjacency& adj : adjacencies) {
      const bool ina = component[adj.a] == 0, inb = component[adj.b] == 0;
      if (ina == inb) continue;
      component[ina ? adj.b : adj.a] = 0;
      tree_edges.push_back(&adj);
      grown = true;
    }
  }
  for (int c : component)
    if (c != 0) return false;  // disconnected under the overlap requirement

  // Occupied opening intervals per wall line (not per wall piece): openings
  // of equal end-point orientation must not come close enough for their
  // heatmap disks to merge, even across a T junction.
  std::map<std::pair<bool, double>, std::vector<Interval>> line_openings;
  const auto find_wall = [&plan](bool vertical, double line, double lo, double hi) {
    for (size_t w = 0; w < plan.walls.size(); ++w) {
      const Vec2 pa = plan.corner_by_id(plan.walls[w].a)->position;
      const Vec2 pb = plan.corner_by_id(plan.walls[w].b)->position;
      if (vertical) {
        if (pa.x != line || pb.x != line) continue;
        if (std::min(pa.y, pb.y) <= lo && std::max(pa.y, pb.y) >= hi)
          return static_cast<int>(w);
      } else {
        if (pa.y != line || pb.y != line) continue;
        if (std::min(pa.x, pb.x) <= lo && std::max(pa.x, pb.x) >= hi)
          return static_cast<int>(w);
      }
    }
    return -1;
  };

  const auto place_opening = [&](bool vertical, double line, double lo, double hi,
                                 double length_px, OpeningKind kind) {
    // Candidate host walls are pieces of the boundary line covering part of
    // [lo, hi]; pick a position honoring margins and the spacing rule.
    for (int shot = 0; shot < 12; ++shot) {
      const double c0 = lo + margin_px + length_px / 2.0;
      const double c1 = hi - margin_px - length_px / 2.0;
      if (c1 < c0) return false;
      const double center = std::round(rng.uniform(c0, c1));
      const double o_lo = std::round(center - length_px / 2.0);
      const double o_hi = std::round(center + length_px / 2.0);
      if (o_lo < lo + 1.0 || o_hi > hi - 1.0) continue;
      const int wall = find_wall(vertical, line, o_lo, o_hi);
      if (wall < 0) continue;
      bool clear = true;
      for (const Interval& used : line_openings[{vertical, line}]) {
        if (o_lo < used.hi + spacing_px && used.lo < o_hi + spacing_px) {
          clear = false;
          break;
        }
      }
      if (!clear) continue;
      line_openings[{vertical, line}].push_back({o_lo, o_hi});
      Opening opening;
      opening.kind = kind;
      opening.wall = wall;
      opening.p1 = vertical ? Vec2{line, o_lo} : Vec2{o_lo, line};
      opening.p2 = vertical ? Vec2{line, o_hi} : Vec2{o_hi, line};
      plan.openings.push_back(opening);
      return true;
    }
    return false;
  };

  for (const Adjacency* adj : tree_edges) {
    if (!place_opening(adj->vertical, adj->line, adj->lo, adj->hi, door_px, OpeningKind::Door))
      return false;  // connectivity must hold; retry the whole plan
  }

  // Windows on exterior walls up to the target opening count.
  const int target_openings =
      std::clamp(static_cast<int>(std::lround(rng.gaussian(config.opening_count_mean,
                                                           config.opening_count_std))),
                 0, 40);
  int windows_wanted = std::max(0, target_openings - static_cast<int>(plan.openings.size()));
  const double win_px = kWindowLengthM * px_per_m;

  struct ExteriorSpan {
    bool vertical;
    double line, lo, hi;
  };
  std::vector<ExteriorSpan> exterior;
  const Rect bbox{snap_x.at(0.0), snap_y.at(0.0), snap_x.at(width_m), snap_y.at(height_m)};
  for (const Rect& r : rooms_px) {
    if (r.xmin == bbox.xmin) exterior.push_back({true, r.xmin, r.ymin, r.ymax});
    if (r.xmax == bbox.xmax) exterior.push_back({true, r.xmax, r.ymin, r.ymax});
    if (r.ymin == bbox.ymin) exterior.push_back({false, r.ymin, r.xmin, r.xmax});
    if (r.ymax == bbox.ymax) exterior.push_back({false, r.ymax, r.xmin, r.xmax});
  }
  for (int placed = 0, guard = 0; placed < windows_wanted && guard < 200; ++guard) {
    const ExteriorSpan& span = exterior[rng.uniform_index(exterior.size())];
    if (place_opening(span.vertical, span.line, span.lo, span.hi, win_px, OpeningKind::Window))
      ++placed;
  }

  // Icons.
  const int target_icons =
      std::clamp(static_cast<int>(std::lround(rng.gaussian(config.icon_count_mean,
                                                           config.icon_count_std))),
                 0, 30);
  const double wall_margin_px = kIconWallMarginM * px_per_m;
  const double gap_px = kIconGapM * px_per_m;
  std::vector<double> cumulative_area;
  double total_area = 0.0;
  for (const Rect& r : rooms_px) {
    total_area += r.area();
    cumulative_area.push_back(total_area);
  }
  for (int placed = 0, guard = 0; placed < target_icons && guard < 60 * target_icons; ++guard) {
    const double pick = rng.uniform(0.0, total_area);
    size_t room = 0;
    while (room + 1 < cumulative_area.size() && cumulative_area[room] <= pick) ++room;
    const Rect& r = rooms_px[room];
    const IconSpec spec = sample_icon_spec(rng, kinds[room]);
    const double w_px = spec.w * px_per_m, h_px = spec.h * px_per_m;
    if (r.width() - 2.0 * wall_margin_px <= w_px || r.height() - 2.0 * wall_margin_px <= h_px)
      continue;
    const double x0 = std::round(rng.uniform(r.xmin + wall_margin_px, r.xmax - wall_margin_px - w_px));
    const double y0 = std::round(rng.uniform(r.ymin + wall_margin_px, r.ymax - wall_margin_px - h_px));
    const Rect rect{x0, y0, std::round(x0 + w_px), std::round(y0 + h_px)};
    if (rect.width() < 4.0 || rect.height() < 4.0) continue;
    bool clear = true;
    for (const Icon& other : plan.icons) {
      const Rect grown{other.rect.xmin - gap_px, other.rect.ymin - gap_px,
                       other.rect.xmax + gap_px, other.rect.ymax + gap_px};
      if (rect_intersection_area(grown, rect) > 0.0) {
        clear = false;
        break;
      }
    }
    if (!clear) continue;
    plan.icons.push_back({spec.kind, rect});
    ++placed;
  }

  std::sort(plan.openings.begin(), plan.openings.end(), [](const Opening& a, const Opening& b) {
    return std::tie(a.p1.y, a.p1.x, a.p2.y, a.p2.x) < std::tie(b.p1.y, b.p1.x, b.p2.y, b.p2.x);
  });
  std::sort(plan.icons.begin(), plan.icons.end(), [](const Icon& a, const Icon& b) {
    return std::tie(a.rect.ymin, a.rect.xmin) < std::tie(b.rect.ymin, b.rect.xmin);
  });
  return true;
}

}  // namespace

Floorplan gen_floorplan(const SynthConfig& config) {
  Floorplan plan;
  for (uint64_t attempt = 0; attempt < 16; ++attempt) {
    if (!generate_once(config, attempt, plan)) continue;
    if (validate(plan).empty()) return plan;
  }
  throw std::runtime_error("gen_floorplan: no valid plan after 16 attempts");
}

namespace {

double icon_height_m(IconKind kind) {
  switch (kind) {
    case IconKind::Counter: return 0.9;
    case IconKind::Bathtub: return 0.55;
    case IconKind::Toilet: return 0.75;
    case IconKind::Sink: return 0.85;
    case IconKind::Sofa: return 0.8;
    case IconKind::Cabinet: return 1.8;
    case IconKind::Bed: return 0.5;
    case IconKind::Table: return 0.75;
    case IconKind::Refrigerator: return 1.8;
  }
  return 0.8;
}

}  // namespace

PointCloud sample_scan(const Floorplan& plan, double density_per_m2, uint64_t seed) {
  if (!plan.domain) throw std::invalid_argument("sample_scan: plan has no domain");
  if (plan.walls.empty()) throw std::invalid_argument("sample_scan: plan has no walls");
  if (density_per_m2 < 0.0) throw std::invalid_argument("sample_scan: negative density");

  const FloorplanDomain& domain = *plan.domain;
  Rng rng(seed);
  PointCloud cloud;
  constexpr double kNoiseSigmaM = 0.01;

  const auto emit = [&](double wx, double wy, double wz, std::array<uint8_t, 3> color) {
    cloud.positions.push_back({wx + rng.gaussian(0.0, kNoiseSigmaM),
                               wy + rng.gaussian(0.0, kNoiseSigmaM),
                               wz + rng.gaussian(0.0, kNoiseSigmaM)});
    cloud.colors.push_back(color);
  };

  // Walls: vertical rectangles, floor to 2.5 m.
  for (const Wall& wall : plan.walls) {
    const Vec2 a = domain.grid_to_world(plan.corner_by_id(wall.a)->position);
    const Vec2 b = domain.grid_to_world(plan.corner_by_id(wall.b)->position);
    const double len = distance(a, b);
    const uint64_t n = rng.poisson(density_per_m2 * len * kWallHeightM);
    for (uint64_t i = 0; i < n; ++i) {
      const double t = rng.uniform();
      const double h = rng.uniform(0.0, kWallHeightM);
      emit(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y), h, {200, 200, 200});
    }
  }

  // Floor: one pass per room polygon (rejection sampling in its bbox).
  for (const Room& room : plan.rooms) {
    double xmin = room.boundary[0].x, xmax = xmin, ymin = room.boundary[0].y, ymax = ymin;
    for (const Vec2& v : room.boundary) {
      xmin = std::min(xmin, v.x);
      xmax = std::max(xmax, v.x);
      ymin = std::min(ymin, v.y);
      ymax = std::max(ymax, v.y);
    }
    const double area_m2 = polygon_area(room.boundary) * domain.scale * domain.scale;
    const uint64_t n = rng.poisson(density_per_m2 * area_m2);
    for (uint64_t i = 0; i < n; ++i) {
      Vec2 g{0.0, 0.0};
      bool ok = false;
      for (int tries = 0; tries < 64 && !ok; ++tries) {
        g = {rng.uniform(xmin, xmax), rng.uniform(ymin, ymax)};
        ok = point_in_polygon(g, room.boundary);
      }
      if (!ok) continue;
      const Vec2 w = domain.grid_to_world(g);
      emit(w.x, w.y, 0.0, {150, 120, 90});
    }
  }

  // Icons: boxes; top face plus the four sides.
  for (const Icon& icon : plan.icons) {
    const Vec2 lo = domain.grid_to_world({icon.rect.xmin, icon.rect.ymin});
    const Vec2 hi = domain.grid_to_world({icon.rect.xmax, icon.rect.ymax});
    const double w = hi.x - lo.x, d = hi.y - lo.y, h = icon_height_m(icon.kind);
    const uint64_t n_top = rng.poisson(density_per_m2 * w * d);
    for (uint64_t i = 0; i < n_top; ++i)
      emit(rng.uniform(lo.x, hi.x), rng.uniform(lo.y, hi.y), h, {90, 140, 190});
    const uint64_t n_sides = rng.poisson(density_per_m2 * 2.0 * (w + d) * h);
    for (uint64_t i = 0; i < n_sides; ++i) {
      const double along = rng.uniform(0.0, 2.0 * (w + d));
      const double z = rng.uniform(0.0, h);
      double x = lo.x, y = lo.y;
      if (along < w) x = lo.x + along;
      else if (along < w + d) { x = hi.x; y = lo.y + (along - w); }
      else if (along < 2.0 * w + d) { x = hi.x - (along - w - d); y = hi.y; }
      else y = hi.y - (along - 2.0 * w - d);
      emit(x, y, z, {90, 140, 190});
    }
  }

  return cloud;
}

HeatmapStack corrupt_heatmaps(const HeatmapStack& stack, const NoiseConfig& noise, uint64_t seed) {
  if (noise.heatmap_sigma == 0.0 && noise.dropout_prob == 0.0 && noise.jitter_px == 0.0)
    return stack;

  Rng rng(seed);
  HeatmapStack out = stack;
  const int res = stack.resolution;

  // Jitter / drop the geometry disks. Disk centers are recovered as the
  // max-set centroids of the clean components, so this pass expects a
  // rendered ground-truth stack.
  if (noise.jitter_px > 0.0 || noise.dropout_prob > 0.0) {
    for (int c = 0; c < channels::kGeometryCount; ++c) {
      const auto peaks = extract_peaks(stack.plane(c), res, 0.5, 1);
      auto plane = out.plane(c);
      std::fill(plane.begin(), plane.end(), 0.0);
      for (const Peak& peak : peaks) {
        const double jx = noise.jitter_px > 0.0 ? rng.uniform(-noise.jitter_px, noise.jitter_px) : 0.0;
        const double jy = noise.jitter_px > 0.0 ? rng.uniform(-noise.jitter_px, noise.jitter_px) : 0.0;
        const bool drop = noise.dropout_prob > 0.0 && rng.bernoulli(noise.dropout_prob);
        if (drop) continue;
        const Vec2 center{peak.peak_centroid.x + jx, peak.peak_centroid.y + jy};
        const double r = kHeatmapDiskRadius;
        const int i0 = std::max(0, static_cast<int>(std::floor(center.y - r)));
        const int i1 = std::min(res - 1, static_cast<int>(std::ceil(center.y + r)));
        const int j0 = std::max(0, static_cast<int>(std::floor(center.x - r)));
        const int j1 = std::min(res - 1, static_cast<int>(std::ceil(center.x + r)));
        for (int i = i0; i <= i1; ++i)
          for (int j = j0; j <= j1; ++j) {
            const double dx = j - center.x, dy = i - center.y;
            if (dx * dx + dy * dy <= r * r) out.at(c, i, j) = 1.0;
          }
      }
    }
  }

  if (noise.heatmap_sigma > 0.0) {
    for (int c = 0; c < channels::kGeometryCount; ++c) {
      for (double& v : out.plane(c))
        v = std::clamp(v + rng.gaussian(0.0, noise.heatmap_sigma), 0.0, 1.0);
    }
    // Semantic groups: noisy but still a PDF per pixel.
    for (int base : {channels::kRoomSemanticBase, channels::kIconSemanticBase}) {
      const int count = base == channels::kRoomSemanticBase ? channels::kRoomSemanticCount
                                                            : channels::kIconSemanticCount;
      for (int c = base; c < base + count; ++c) {
        for (double& v : out.plane(c))
          v = std::max(0.0, v + rng.gaussian(0.0, noise.heatmap_sigma));
      }
      for (size_t px = 0; px < out.plane_size(); ++px) {
        double sum = 0.0;
        for (int c = base; c < base + count; ++c) sum += out.data[c * out.plane_size() + px];
        if (sum <= 0.0) {
          for (int c = base; c < base + count; ++c)
            out.data[c * out.plane_size() + px] = 1.0 / count;
        } else {
          for (int c = base; c < base + count; ++c) out.data[c * out.plane_size() + px] /= sum;
        }
      }
    }
  }

  return out;
}

}  // namespace vecplan
