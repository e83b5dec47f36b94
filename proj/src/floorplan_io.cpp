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

#include "vecplan/floorplan_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace vecplan {

namespace {

using json = nlohmann::ordered_json;

std::string index_path(const std::string& base, size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw PlanIoError(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw PlanIoError(path + "." + key, "missing key");
  return *it;
}

double require_number(const json& obj, const std::string& key, const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_number()) throw PlanIoError(path + "." + key, "expected a number");
  return v.get<double>();
}

int require_int(const json& obj, const std::string& key, const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_number_integer()) throw PlanIoError(path + "." + key, "expected an integer");
  return v.get<int>();
}

std::string require_string(const json& obj, const std::string& key, const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_string()) throw PlanIoError(path + "." + key, "expected a string");
  return v.get<std::string>();
}

const json& require_array(const json& obj, const std::string& key, const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_array()) throw PlanIoError(path + "." + key, "expected an array");
  return v;
}

}  // namespace

std::string save(const Floorplan& plan) {
  const auto violations = validate(plan);
  if (!violations.empty()) {
    throw std::invalid_argument("save: plan is invalid (" + violations.front().entity +
                                ": " + violations.front().message + ")");
  }

  json doc;
  doc["version"] = 1;
  doc["resolution"] = kGridResolution;

  doc["corners"] = json::array();
  for (const Corner& c : plan.corners) {
    doc["corners"].push_back(
        {{"id", c.id}, {"x", c.position.x}, {"y", c.position.y}, {"junction", to_string(c.junction)}});
  }
  doc["walls"] = json::array();
  for (const Wall& w : plan.walls) doc["walls"].push_back({{"a", w.a}, {"b", w.b}});
  doc["openings"] = json::array();
  for (const Opening& o : plan.openings) {
    doc["openings"].push_back({{"kind", to_string(o.kind)},
                               {"x1", o.p1.x},
                               {"y1", o.p1.y},
                               {"x2", o.p2.x},
                               {"y2", o.p2.y},
                               {"wall", o.wall}});
  }
  doc["icons"] = json::array();
  for (const Icon& icon : plan.icons) {
    doc["icons"].push_back({{"kind", to_string(icon.kind)},
                            {"xmin", icon.rect.xmin},
                            {"ymin", icon.rect.ymin},
                            {"xmax", icon.rect.xmax},
                            {"ymax", icon.rect.ymax}});
  }
  doc["rooms"] = json::array();
  for (const Room& r : plan.rooms) {
    json poly = json::array();
    for (const Vec2& v : r.boundary) poly.push_back({v.x, v.y});
    doc["rooms"].push_back({{"kind", to_string(r.kind)}, {"polygon", std::move(poly)}});
  }
  if (plan.domain) {
    doc["domain"] = {{"origin", {plan.domain->origin.x, plan.domain->origin.y}},
                     {"scale", plan.domain->scale}};
  }
  return doc.dump(2) + "\n";
}

Floorplan load(const std::string& bytes) {
  json doc;
  try {
    doc = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw PlanIoError("$", std::string("malformed document: ") + e.what());
  }
  if (!doc.is_object()) throw PlanIoError("$", "expected a JSON object");

  const int version = require_int(doc, "version", "$");
  if (version != 1) throw PlanIoError("$.version", "unsupported version " + std::to_string(version));
  const int resolution = require_int(doc, "resolution", "$");
  if (resolution != kGridResolution)
    throw PlanIoError("$.resolution", "unsupported resolution " + std::to_string(resolution));

  Floorplan plan;
  std::set<int> corner_ids;

  const json& corners = require_array(doc, "corners", "$");
  for (size_t i = 0; i < corners.size(); ++i) {
    const std::string path = index_path("$.corners", i);
    const json& c = corners[i];
    Corner corner;
    corner.id = require_int(c, "id", path);
    corner.position = {require_number(c, "x", path), require_number(c, "y", path)};
    const std::string junction = require_string(c, "junction", path);
    const auto jt = junction_from_string(junction);
    if (!jt) throw PlanIoError(path + ".junction", "unknown junction \"" + junction + "\"");
    corner.junction = *jt;
    corner_ids.insert(corner.id);
    plan.corners.push_back(corner);
  }

  const json& walls = require_array(doc, "walls", "$");
  for (size_t i = 0; i < walls.size(); ++i) {
    const std::string path = index_path("$.walls", i);
    Wall w;
    w.a = require_int(walls[i], "a", path);
    w.b = require_int(walls[i], "b", path);
    if (!corner_ids.count(w.a)) throw PlanIoError(path + ".a", "dangling corner id " + std::to_string(w.a));
    if (!corner_ids.count(w.b)) throw PlanIoError(path + ".b", "dangling corner id " + std::to_string(w.b));
    plan.walls.push_back(w);
  }

  const json& openings = require_array(doc, "openings", "$");
  for (size_t i = 0; i < openings.size(); ++i) {
    const std::string path = index_path("$.openings", i);
    const json& o = openings[i];
    Opening opening;
    const std::string kind = require_string(o, "kind", path);
    const auto ok = opening_kind_from_string(kind);
    if (!ok) throw PlanIoError(path + ".kind", "unknown opening kind \"" + kind + "\"");
    opening.kind = *ok;
    opening.p1 = {require_number(o, "x1", path), require_number(o, "y1", path)};
    opening.p2 = {require_number(o, "x2", path), require_number(o, "y2", path)};
    opening.wall = require_int(o, "wall", path);
    if (opening.wall < 0 || opening.wall >= static_cast<int>(plan.walls.size()))
      throw PlanIoError(path + ".wall", "dangling wall id " + std::to_string(opening.wall));
    plan.openings.push_back(opening);
  }

  const json& icons = require_array(doc, "icons", "$");
  for (size_t i = 0; i < icons.size(); ++i) {
    const std::string path = index_path("$.icons", i);
    const json& node = icons[i];
    Icon icon;
    const std::string kind = require_string(node, "kind", path);
    const auto ik = icon_kind_from_string(kind);
    if (!ik) throw PlanIoError(path + ".kind", "unknown icon kind \"" + kind + "\"");
    icon.kind = *ik;
    icon.rect = {require_number(node, "xmin", path), require_number(node, "ymin", path),
                 require_number(node, "xmax", path), require_number(node, "ymax", path)};
    plan.icons.push_back(icon);
  }

  const json& rooms = require_array(doc, "rooms", "$");
  for (size_t i = 0; i < rooms.size(); ++i) {
    const std::string path = index_path("$.rooms", i);
    const json& node = rooms[i];
    Room room;
    const std::string kind = require_string(node, "kind", path);
    const auto rk = room_kind_from_string(kind);
    if (!rk) throw PlanIoError(path + ".kind", "unknown room kind \"" + kind + "\"");
    room.kind = *rk;
    const json& poly = require_array(node, "polygon", path);
    for (size_t v = 0; v < poly.size(); ++v) {
      const json& vertex = poly[v];
      if (!vertex.is_array() || vertex.size() != 2 || !vertex[0].is_number() || !vertex[1].is_number())
        throw PlanIoError(index_path(path + ".polygon", v), "expected [x, y]");
      room.boundary.push_back({vertex[0].get<double>(), vertex[1].get<double>()});
    }
    plan.rooms.push_back(room);
  }

  if (doc.contains("domain")) {
    const json& d = doc["domain"];
    const json& origin = require_array(d, "origin", "$.domain");
    if (origin.size() != 2 || !origin[0].is_number() || !origin[1].is_number())
      throw PlanIoError("$.domain.origin", "expected [x, y]");
    FloorplanDomain domain;
    domain.origin = {origin[0].get<double>(), origin[1].get<double>()};
    domain.scale = require_number(d, "scale", "$.domain");
    if (domain.scale <= 0.0) throw PlanIoError("$.domain.scale", "scale must be positive");
    plan.domain = domain;
  }

  return plan;
}

void save_file(const Floorplan& plan, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << save(plan);
}

Floorplan load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load(ss.str());
}

}  // namespace vecplan
