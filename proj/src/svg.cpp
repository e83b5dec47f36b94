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

#include "vecplan/svg.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace vecplan {

namespace {

// Fixed fill per room type, indexed by RoomKind.
constexpr const char* kRoomColors[] = {
    "#f4d9a0",  // living room
    "#f2b08c",  // kitchen
    "#a8c8e8",  // bedroom
    "#b8e0d8",  // bathroom
    "#d8c8f0",  // closet
    "#cde8a8",  // balcony
    "#e0e0e0",  // corridor
    "#f0c8d0",  // dining room
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

void emit_line(std::ostringstream& out, const Vec2& a, const Vec2& b, const char* color,
               double width) {
  out << "  <line x1=\"" << fmt(a.x) << "\" y1=\"" << fmt(a.y) << "\" x2=\"" << fmt(b.x)
      << "\" y2=\"" << fmt(b.y) << "\" stroke=\"" << color << "\" stroke-width=\""
      << fmt(width) << "\"/>\n";
}

}  // namespace

const char* room_fill_color(RoomKind kind) { return kRoomColors[static_cast<int>(kind)]; }

std::string render_svg(const Floorplan& plan) {
  if (!validate(plan).empty()) throw std::invalid_argument("render_svg: plan is invalid");

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kGridResolution
      << "\" height=\"" << kGridResolution << "\" viewBox=\"0 0 " << kGridResolution << " "
      << kGridResolution << "\">\n";
  out << "  <rect x=\"0\" y=\"0\" width=\"" << kGridResolution << "\" height=\""
      << kGridResolution << "\" fill=\"#ffffff\"/>\n";

  for (const Room& room : plan.rooms) {
    out << "  <polygon points=\"";
    for (size_t i = 0; i < room.boundary.size(); ++i) {
      if (i) out << " ";
      out << fmt(room.boundary[i].x) << "," << fmt(room.boundary[i].y);
    }
    out << "\" fill=\"" << room_fill_color(room.kind) << "\" stroke=\"none\"/>\n";
  }

  for (const Wall& wall : plan.walls) {
    const Corner* a = plan.corner_by_id(wall.a);
    const Corner* b = plan.corner_by_id(wall.b);
    emit_line(out, a->position, b->position, "#303030", wall.thickness);
  }

  for (const Opening& o : plan.openings) {
    // Double-line glyph: clear the wall, then two parallel strokes offset
    // perpendicular to the opening.
    const Vec2 d = o.p2 - o.p1;
    const double len = norm(d);
    const Vec2 unit = len > 0.0 ? Vec2{d.x / len, d.y / len} : Vec2{1.0, 0.0};
    const Vec2 perp{-unit.y, unit.x};
    const char* color = o.kind == OpeningKind::Door ? "#8b5a2b" : "#4a90d9";
    emit_line(out, o.p1, o.p2, "#ffffff", 4.0);
    emit_line(out, o.p1 + perp * 1.2, o.p2 + perp * 1.2, color, 1.0);
    emit_line(out, o.p1 - perp * 1.2, o.p2 - perp * 1.2, color, 1.0);
  }

  for (const Icon& icon : plan.icons) {
    out << "  <rect x=\"" << fmt(icon.rect.xmin) << "\" y=\"" << fmt(icon.rect.ymin)
        << "\" width=\"" << fmt(icon.rect.width()) << "\" height=\"" << fmt(icon.rect.height())
        << "\" fill=\"none\" stroke=\"#606060\" stroke-width=\"1\"/>\n";
    const double cx = 0.5 * (icon.rect.xmin + icon.rect.xmax);
    const double cy = 0.5 * (icon.rect.ymin + icon.rect.ymax);
    out << "  <text x=\"" << fmt(cx) << "\" y=\"" << fmt(cy)
        << "\" font-size=\"6\" text-anchor=\"middle\" fill=\"#606060\">" << to_string(icon.kind)
        << "</text>\n";
  }

  out << "</svg>\n";
  return out.str();
}

}  // namespace vecplan
