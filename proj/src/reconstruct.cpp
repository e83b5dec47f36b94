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

#include "vecplan/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>

namespace vecplan {

IPModel build_ip(const CandidateSet& candidates) {
  IPModel model;
  const int nc = static_cast<int>(candidates.corners.size());
  const int nw = static_cast<int>(candidates.walls.size());
  const int no = static_cast<int>(candidates.openings.size());
  const int ni = static_cast<int>(candidates.icons.size());
  model.corner_base = 0;
  model.wall_base = nc;
  model.opening_base = nc + nw;
  model.icon_base = nc + nw + no;
  model.weights.resize(nc + nw + no + ni);
  model.var_names.resize(model.weights.size());

  for (int i = 0; i < nc; ++i) {
    model.weights[i] = candidates.corners[i].value - kConfidenceOffset;
    model.var_names[i] = "corner_" + std::to_string(i);
  }
  for (int i = 0; i < nw; ++i) {
    model.weights[model.wall_base + i] = candidates.walls[i].weight;
    model.var_names[model.wall_base + i] = "wall_" + std::to_string(i);
  }
  for (int i = 0; i < no; ++i) {
    model.weights[model.opening_base + i] = candidates.openings[i].weight;
    model.var_names[model.opening_base + i] = "opening_" + std::to_string(i);
  }
  for (int i = 0; i < ni; ++i) {
    model.weights[model.icon_base + i] = candidates.icons[i].weight;
    model.var_names[model.icon_base + i] = "icon_" + std::to_string(i);
  }

  // C1: a wall implies both of its corners.
  for (int w = 0; w < nw; ++w) {
    for (int corner : {candidates.walls[w].a, candidates.walls[w].b}) {
      IpConstraint c;
      c.terms = {{model.wall_base + w, 1}, {corner, -1}};
      c.relation = IpConstraint::Relation::LessEq;
      c.rhs = 0;
      c.name = "c1_wall" + std::to_string(w) + "_corner" + std::to_string(corner);
      model.constraints.push_back(std::move(c));
    }
  }

  // C2: a selected corner has exactly one incident wall per junction
  // direction (and none otherwise, which candidate generation already
  // guarantees). Emitted per (corner, direction), including empty sums
  // which force the corner off.
  for (int i = 0; i < nc; ++i) {
    const CornerCandidate& corner = candidates.corners[i];
    for (Direction d : junction_directions(corner.junction).list()) {
      IpConstraint c;
      for (int w = 0; w < nw; ++w) {
        const WallCandidate& wall = candidates.walls[w];
        if (wall.a == i && wall_direction_from(wall.p1, wall.p2) == d)
          c.terms.push_back({model.wall_base + w, 1});
        else if (wall.b == i && wall_direction_from(wall.p2, wall.p1) == d)
          c.terms.push_back({model.wall_base + w, 1});
      }
      c.terms.push_back({i, -1});
      c.relation = IpConstraint::Relation::Eq;
      c.rhs = 0;
      c.name = "c2_corner" + std::to_string(i) + "_" + to_string(d);
      model.constraints.push_back(std::move(c));
    }
  }

  // C3: an opening implies one of its hosting walls.
  for (int o = 0; o < no; ++o) {
    IpConstraint c;
    c.terms.push_back({model.opening_base + o, 1});
    for (int w : candidates.openings[o].host_walls) c.terms.push_back({model.wall_base + w, -1});
    c.relation = IpConstraint::Relation::LessEq;
    c.rhs = 0;
    c.name = "c3_opening" + std::to_string(o);
    model.constraints.push_back(std::move(c));
  }

  // C4: nearby corners on a shared wall line are mutually exclusive.
  for (int i = 0; i < nc; ++i) {
    for (int j = i + 1; j < nc; ++j) {
      const Vec2& p = candidates.corners[i].position;
      const Vec2& q = candidates.corners[j].position;
      const bool shared_line =
          std::abs(p.x - q.x) <= kAxisTolerance || std::abs(p.y - q.y) <= kAxisTolerance;
      if (!shared_line || distance(p, q) >= kCornerExclusionRadius) continue;
      IpConstraint c;
      c.terms = {{i, 1}, {j, 1}};
      c.relation = IpConstraint::Relation::LessEq;
      c.rhs = 1;
      c.name = "c4_corners" + std::to_string(i) + "_" + std::to_string(j);
      model.constraints.push_back(std::move(c));
    }
  }

  // C5: overlapping icons are mutually exclusive.
  for (int i = 0; i < ni; ++i) {
    for (int j = i + 1; j < ni; ++j) {
      if (rect_iou(candidates.icons[i].rect, candidates.icons[j].rect) <= kIconExclusionIou)
        continue;
      IpConstraint c;
      c.terms = {{model.icon_base + i, 1}, {model.icon_base + j, 1}};
      c.relation = IpConstraint::Relation::LessEq;
      c.rhs = 1;
      c.name = "c5_icons" + std::to_string(i) + "_" + std::to_string(j);
      model.constraints.push_back(std::move(c));
    }
  }

  return model;
}

namespace {

// Branch and bound over one independent block of variables.
class BlockSolver {
 public:
  BlockSolver(const IPModel& model, const std::vector<int>& block_vars, uint64_t node_budget)
      : model_(model), vars_(block_vars), node_budget_(node_budget) {
    const int n = static_cast<int>(vars_.size());
    local_of_.clear();
    for (int i = 0; i < n; ++i) local_of_[vars_[i]] = i;
    weights_.resize(n);
    for (int i = 0; i < n; ++i) weights_[i] = model.weights[vars_[i]];

    for (const IpConstraint& c : model.constraints) {
      if (c.terms.empty()) continue;
      if (!local_of_.count(c.terms.front().var)) continue;
      Row row;
      row.eq = c.relation == IpConstraint::Relation::Eq;
      row.rhs = c.rhs;
      int min_l = 0, max_l = 0;
      for (const IpTerm& t : c.terms) {
        row.terms.push_back({local_of_.at(t.var), t.coef});
        min_l += std::min(0, t.coef);
        max_l += std::max(0, t.coef);
      }
      row.min_lhs = min_l;
      row.max_lhs = max_l;
      rows_.push_back(std::move(row));
    }
    var_rows_.resize(n);
    for (size_t r = 0; r < rows_.size(); ++r) {
      for (const auto& [v, k] : rows_[r].terms) var_rows_[v].push_back({static_cast<int>(r), k});
    }

    fixed_.assign(n, -1);
    pos_remaining_ = 0.0;
    for (double w : weights_) pos_remaining_ += std::max(0.0, w);
  }

  // Returns false when infeasible (no assignment found).
  bool solve() {
    dfs(0);
    return has_incumbent_;
  }

  bool certified() const { return certified_; }
  uint64_t nodes() const { return nodes_; }
  const std::vector<uint8_t>& best() const { return best_; }

 private:
  struct Row {
    std::vector<std::pair<int, int>> terms;  // (local var, coef)
    bool eq = false;
    int rhs = 0;
    int min_lhs = 0;  // achievable bounds under current fixes
    int max_lhs = 0;
  };

  bool fix(int v, int val) {
    fixed_[v] = val;
    trail_.push_back(v);
    value_ += weights_[v] * val;
    pos_remaining_ -= std::max(0.0, weights_[v]);
    for (const auto& [r, k] : var_rows_[v]) {
      Row& row = rows_[r];
      row.min_lhs += k * val - std::min(0, k);
      row.max_lhs += k * val - std::max(0, k);
      if (row.min_lhs > row.rhs) return false;
      if (row.eq && row.max_lhs < row.rhs) return false;
      dirty_.push_back(r);
    }
    return true;
  }

  void undo_to(size_t mark) {
    while (trail_.size() > mark) {
      const int v = trail_.back();
      trail_.pop_back();
      const int val = fixed_[v];
      for (const auto& [r, k] : var_rows_[v]) {
        Row& row = rows_[r];
        row.min_lhs -= k * val - std::min(0, k);
        row.max_lhs -= k * val - std::max(0, k);
      }
      value_ -= weights_[v] * val;
      pos_remaining_ += std::max(0.0, weights_[v]);
      fixed_[v] = -1;
    }
  }

  // Unit-style propagation to fixpoint over rows touched by recent fixes.
  bool propagate() {
    while (!dirty_.empty()) {
      const int r = dirty_.back();
      dirty_.pop_back();
      const Row& row = rows_[r];
      if (row.min_lhs > row.rhs) return false;
      if (row.eq && row.max_lhs < row.rhs) return false;
      for (const auto& [v, k] : row.terms) {
        if (fixed_[v] != -1) continue;
        bool can0 = true, can1 = true;
        const int min1 = row.min_lhs + k - std::min(0, k);
        const int max1 = row.max_lhs + k - std::max(0, k);
        const int min0 = row.min_lhs - std::min(0, k);
        const int max0 = row.max_lhs - std::max(0, k);
        if (min1 > row.rhs || (row.eq && max1 < row.rhs)) can1 = false;
        if (min0 > row.rhs || (row.eq && max0 < row.rhs)) can0 = false;
        if (!can0 && !can1) return false;
        if (can0 != can1) {
          if (!fix(v, can1 ? 1 : 0)) return false;
        }
      }
    }
    return true;
  }

  void dfs(int from) {
    if (!certified_) return;
    int v = from;
    const int n = static_cast<int>(vars_.size());
    while (v < n && fixed_[v] != -1) ++v;
    if (v == n) {
      // Canonical objective: sum in variable order, so the reported value
      // matches an index-order enumeration bit for bit.
      double value = 0.0;
      for (int i = 0; i < n; ++i) value += fixed_[i] ? weights_[i] : 0.0;
      if (!has_incumbent_ || value > best_value_) {
        has_incumbent_ = true;
        best_value_ = value;
        best_.assign(fixed_.begin(), fixed_.end());
      }
      return;
    }
    for (int val = 0; val <= 1; ++val) {
      if (++nodes_ > node_budget_) {
        certified_ = false;
        return;
      }
      const size_t mark = trail_.size();
      dirty_.clear();
      if (fix(v, val) && propagate()) {
        // Prune only subtrees that cannot strictly beat the incumbent; the
        // first optimum found in this 0-before-1 order is the
        // lexicographically smallest.
        if (!has_incumbent_ || value_ + pos_remaining_ > best_value_) dfs(v + 1);
      }
      undo_to(mark);
      if (!certified_) return;
    }
  }

  const IPModel& model_;
  std::vector<int> vars_;
  std::map<int, int> local_of_;
  std::vector<double> weights_;
  std::vector<Row> rows_;
  std::vector<std::vector<std::pair<int, int>>> var_rows_;

  std::vector<int> fixed_;
  std::vector<int> trail_;
  std::vector<int> dirty_;
  double value_ = 0.0;
  double pos_remaining_ = 0.0;

  bool has_incumbent_ = false;
  double best_value_ = 0.0;
  std::vector<uint8_t> best_;
  uint64_t nodes_ = 0;
  uint64_t node_budget_ = 0;
  bool certified_ = true;
};

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

IPSolution solve_ip(const IPModel& model, uint64_t node_cap) {
  const int n = model.num_vars();
  IPSolution sol;
  sol.assignment.assign(n, 0);
  if (n == 0) {
    sol.feasible = true;
    return sol;
  }

  // Independent constraint blocks are separate subproblems.
  UnionFind uf(n);
  for (const IpConstraint& c : model.constraints) {
    for (size_t t = 1; t < c.terms.size(); ++t) uf.unite(c.terms[0].var, c.terms[t].var);
  }
  std::map<int, std::vector<int>> blocks;
  for (int v = 0; v < n; ++v) blocks[uf.find(v)].push_back(v);

  sol.feasible = true;
  uint64_t budget = node_cap;
  for (auto& [root, vars] : blocks) {
    std::sort(vars.begin(), vars.end());
    BlockSolver solver(model, vars, budget);
    const bool ok = solver.solve();
    sol.nodes += solver.nodes();
    budget = budget > solver.nodes() ? budget - solver.nodes() : 0;
    if (!solver.certified()) sol.certified = false;
    if (!ok) {
      sol.feasible = false;
      break;
    }
    for (size_t i = 0; i < vars.size(); ++i) sol.assignment[vars[i]] = solver.best()[i];
  }

  if (sol.feasible) {
    double objective = 0.0;
    for (int v = 0; v < n; ++v) objective += sol.assignment[v] ? model.weights[v] : 0.0;
    sol.objective = objective;
  } else {
    sol.assignment.assign(n, 0);
    sol.objective = 0.0;
  }
  return sol;
}

std::string to_lp_format(const IPModel& model) {
  std::ostringstream out;
  char buf[64];
  const auto num = [&buf](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };

  out << "\\ vecplan 0-1 integer program\n";
  out << "Maximize\n obj:";
  bool first = true;
  for (int v = 0; v < model.num_vars(); ++v) {
    const double w = model.weights[v];
    if (first) {
      out << " " << num(w) << " " << model.var_names[v];
      first = false;
    } else {
      out << (w < 0 ? " - " : " + ") << num(std::abs(w)) << " " << model.var_names[v];
    }
  }
  if (first) out << " 0";
  out << "\nSubject To\n";
  for (const IpConstraint& c : model.constraints) {
    out << " " << c.name << ":";
    bool lead = true;
    for (const IpTerm& t : c.terms) {
      if (lead) {
        out << " " << t.coef << " " << model.var_names[t.var];
        lead = false;
      } else {
        out << (t.coef < 0 ? " - " : " + ") << std::abs(t.coef) << " " << model.var_names[t.var];
      }
    }
    out << (c.relation == IpConstraint::Relation::Eq ? " = " : " <= ") << c.rhs << "\n";
  }
  out << "Binaries\n";
  for (int v = 0; v < model.num_vars(); ++v) out << " " << model.var_names[v];
  out << "\nEnd\n";
  return out.str();
}

namespace {

// Planar subdivision of axis-aligned segments, via half-edge traversal.
class PlanarFaces {
 public:
  explicit PlanarFaces(const std::vector<std::pair<Vec2, Vec2>>& segments) {
    build(segments);
  }

  // Bounded faces as CCW polygons (positive signed area).
  std::vector<std::vector<Vec2>> bounded_faces() const;

 private:
  static constexpr double kEps = 1e-7;

  int vertex_id(const Vec2& p) {
    const auto key = std::make_pair(p.x, p.y);
    const auto it = vertex_ids_.find(key);
    if (it != vertex_ids_.end()) return it->second;
    const int id = static_cast<int>(points_.size());
    vertex_ids_.emplace(key, id);
    points_.push_back(p);
    return id;
  }

  void build(const std::vector<std::pair<Vec2, Vec2>>& segments);

  std::map<std::pair<double, double>, int> vertex_ids_;
  std::vector<Vec2> points_;
  std::vector<std::pair<int, int>> edges_;  // deduped, undirected
};

void PlanarFaces::build(const std::vector<std::pair<Vec2, Vec2>>& segments) {
  // Split every segment at endpoints of other segments lying on it and at
  // crossings, so edges meet only at shared vertices.
  std::vector<std::pair<int, int>> raw_edges;
  for (size_t s = 0; s < segments.size(); ++s) {
    const auto& [a, b] = segments[s];
    std::vector<Vec2> cuts{a, b};
    for (size_t t = 0; t < segments.size(); ++t) {
      if (t == s) continue;
      const auto& [c, d] = segments[t];
      for (const Vec2& p : {c, d}) {
        if (point_segment_distance(p, a, b) <= kEps) cuts.push_back(p);
      }
      // Crossing of a horizontal and a vertical segment (endpoint contacts
      // are already covered above).
      const bool s_horizontal = std::abs(b.y - a.y) <= std::abs(b.x - a.x);
      const bool t_horizontal = std::abs(d.y - c.y) <= std::abs(d.x - c.x);
      if (s_horizontal && !t_horizontal) {
        const double y = a.y, x = c.x;
        if (x > std::min(a.x, b.x) + kEps && x < std::max(a.x, b.x) - kEps &&
            y > std::min(c.y, d.y) + kEps && y < std::max(c.y, d.y) - kEps)
          cuts.push_back({x, y});
      } else if (!s_horizontal && t_horizontal) {
        const double x = a.x, y = c.y;
        if (y > std::min(a.y, b.y) + kEps && y < std::max(a.y, b.y) - kEps &&
            x > std::min(c.x, d.x) + kEps && x < std::max(c.x, d.x) - kEps)
          cuts.push_back({x, y});
      }
    }
    const bool horizontal = std::abs(b.y - a.y) <= std::abs(b.x - a.x);
    std::sort(cuts.begin(), cuts.end(), [horizontal](const Vec2& p, const Vec2& q) {
      return horizontal ? p.x < q.x : p.y < q.y;
    });
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
      if (distance(cuts[i], cuts[i + 1]) <= kEps) continue;
      const int u = vertex_id(cuts[i]);
      const int v = vertex_id(cuts[i + 1]);
      if (u != v) raw_edges.emplace_back(std::min(u, v), std::max(u, v));
    }
  }
  std::sort(raw_edges.begin(), raw_edges.end());
  raw_edges.erase(std::unique(raw_edges.begin(), raw_edges.end()), raw_edges.end());
  edges_ = std::move(raw_edges);
}

std::vector<std::vector<Vec2>> PlanarFaces::bounded_faces() const {
  const int ne = static_cast<int>(edges_.size());
  // Half-edge 2e = u->v, 2e+1 = v->u.
  const auto origin = [this](int h) {
    return h % 2 == 0 ? edges_[h / 2].first : edges_[h / 2].second;
  };
  const auto head = [this](int h) {
    return h % 2 == 0 ? edges_[h / 2].second : edges_[h / 2].first;
  };

  std::vector<std::vector<int>> outgoing(points_.size());
  for (int h = 0; h < 2 * ne; ++h) outgoing[origin(h)].push_back(h);
  for (size_t v = 0; v < points_.size(); ++v) {
    std::sort(outgoing[v].begin(), outgoing[v].end(), [&](int h1, int h2) {
      const Vec2 d1 = points_[head(h1)] - points_[origin(h1)];
      const Vec2 d2 = points_[head(h2)] - points_[origin(h2)];
      return std::atan2(d1.y, d1.x) < std::atan2(d2.y, d2.x);
    });
  }
  // next(h): at head(h), the outgoing half-edge just before twin(h) in CCW
  // order; bounded faces come out counter-clockwise.
  const auto next_halfedge = [&](int h) {
    const int twin = h ^ 1;
    const auto& out = outgoing[head(h)];
    const auto it = std::find(out.begin(), out.end(), twin);
    const size_t idx = static_cast<size_t>(it - out.begin());
    return out[(idx + out.size() - 1) % out.size()];
  };

  std::vector<uint8_t> visited(2 * ne, 0);
  std::vector<std::vector<Vec2>> faces;
  for (int h0 = 0; h0 < 2 * ne; ++h0) {
    if (visited[h0]) continue;
    std::vector<Vec2> cycle;
    int h = h0;
    do {
      visited[h] = 1;
      cycle.push_back(points_[origin(h)]);
      h = next_halfedge(h);
    } while (h != h0 && cycle.size() <= 4 * edges_.size() + 4);

    // Strip spurs (immediate backtracks over dangling edges).
    std::vector<Vec2> poly;
    for (const Vec2& p : cycle) {
      if (poly.size() >= 2 && poly[poly.size() - 2] == p) poly.pop_back();
      else poly.push_back(p);
    }
    while (poly.size() >= 2 && poly.front() == poly.back()) poly.pop_back();
    // Excise any residual repeated-vertex sub-loop (keep the longer cycle).
    bool changed = true;
    while (changed && poly.size() >= 3) {
      changed = false;
      for (size_t i = 0; i < poly.size() && !changed; ++i) {
        for (size_t j = i + 1; j < poly.size() && !changed; ++j) {
          if (!(poly[i] == poly[j])) continue;
          const size_t inner = j - i;
          if (inner <= poly.size() - inner) {
            poly.erase(poly.begin() + static_cast<long>(i), poly.begin() + static_cast<long>(j));
          } else {
            std::vector<Vec2> kept(poly.begin() + static_cast<long>(i),
                                   poly.begin() + static_cast<long>(j));
            poly = std::move(kept);
          }
          changed = true;
        }
      }
    }
    if (poly.size() < 4) continue;
    if (polygon_signed_area(poly) <= 1e-6) continue;  // outer face or degenerate
    faces.push_back(std::move(poly));
  }
  // Canonical order by bounding box.
  std::sort(faces.begin(), faces.end(), [](const auto& a, const auto& b) {
    const auto key = [](const std::vector<Vec2>& poly) {
      double xmin = poly[0].x, ymin = poly[0].y;
      for (const Vec2& p : poly) {
        xmin = std::min(xmin, p.x);
        ymin = std::min(ymin, p.y);
      }
      return std::make_pair(ymin, xmin);
    };
    return key(a) < key(b);
  });
  return faces;
}

RoomKind classify_face(const std::vector<Vec2>& poly, const HeatmapStack& stack) {
  double sums[kRoomKindCount] = {};
  double xmin = poly[0].x, xmax = poly[0].x, ymin = poly[0].y, ymax = poly[0].y;
  for (const Vec2& p : poly) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const int i0 = std::max(0, static_cast<int>(std::floor(ymin)));
  const int i1 = std::min(stack.resolution - 1, static_cast<int>(std::ceil(ymax)));
  const int j0 = std::max(0, static_cast<int>(std::floor(xmin)));
  const int j1 = std::min(stack.resolution - 1, static_cast<int>(std::ceil(xmax)));
  for (int i = i0; i <= i1; ++i) {
    for (int j = j0; j <= j1; ++j) {
      if (!point_in_polygon({static_cast<double>(j), static_cast<double>(i)}, poly)) continue;
      for (int k = 0; k < kRoomKindCount; ++k)
        sums[k] += stack.at(channels::kRoomTypeBase + k, i, j);
    }
  }
  int best = 0;
  for (int k = 1; k < kRoomKindCount; ++k)
    if (sums[k] > sums[best]) best = k;
  return static_cast<RoomKind>(best);
}

}  // namespace

std::vector<Room> assemble_rooms(const std::vector<std::pair<Vec2, Vec2>>& wall_segments,
                                 const HeatmapStack& stack) {
  if (wall_segments.empty()) return {};
  PlanarFaces subdivision(wall_segments);
  std::vector<Room> rooms;
  for (auto& poly : subdivision.bounded_faces()) {
    Room room;
    room.kind = classify_face(poly, stack);
    room.boundary = std::move(poly);
    rooms.push_back(std::move(room));
  }
  return rooms;
}

namespace {

double segment_room_overlap(const Vec2& a, const Vec2& b, const Room& room) {
  // Collinear overlap length between an axis-aligned wall segment and the
  // room boundary (edges within the axis tolerance laterally).
  const bool horizontal = std::abs(b.y - a.y) <= std::abs(b.x - a.x);
  double total = 0.0;
  const size_t n = room.boundary.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec2& c = room.boundary[i];
    const Vec2& d = room.boundary[(i + 1) % n];
    if (horizontal) {
      if (std::abs(d.y - c.y) > std::abs(d.x - c.x)) continue;
      if (std::abs(c.y - a.y) > kAxisTolerance) continue;
      const double lo = std::max(std::min(a.x, b.x), std::min(c.x, d.x));
      const double hi = std::min(std::max(a.x, b.x), std::max(c.x, d.x));
      total += std::max(0.0, hi - lo);
    } else {
      if (std::abs(d.x - c.x) > std::abs(d.y - c.y)) continue;
      if (std::abs(c.x - a.x) > kAxisTolerance) continue;
      const double lo = std::max(std::min(a.y, b.y), std::min(c.y, d.y));
      const double hi = std::min(std::max(a.y, b.y), std::max(c.y, d.y));
      total += std::max(0.0, hi - lo);
    }
  }
  return total;
}

}  // namespace

ReconstructResult reconstruct_detailed(const HeatmapStack& stack, uint64_t node_cap) {
  ReconstructResult res;
  res.candidates = extract_candidates(stack);
  res.model = build_ip(res.candidates);
  res.solution = solve_ip(res.model, node_cap);

  const CandidateSet& cs = res.candidates;
  const auto selected = [&res](int var) {
    return res.solution.feasible && res.solution.assignment[var] != 0;
  };

  const int nc = static_cast<int>(cs.corners.size());

  // Snap selected corners so that walls become exactly axis-aligned: corners
  // linked by a horizontal wall share one y (vertical: one x), each group
  // coordinate being the mean of the members' sub-pixel peak centroids.
  UnionFind group_x(nc), group_y(nc);
  for (size_t w = 0; w < cs.walls.size(); ++w) {
    if (!selected(res.model.wall_base + static_cast<int>(w))) continue;
    const WallCandidate& wall = cs.walls[w];
    if (wall.horizontal) group_y.unite(wall.a, wall.b);
    else group_x.unite(wall.a, wall.b);
  }
  std::map<int, std::pair<double, int>> mean_x, mean_y;  // root -> (sum, count)
  for (int i = 0; i < nc; ++i) {
    if (!selected(i)) continue;
    auto& mx = mean_x[group_x.find(i)];
    mx.first += cs.corners[i].peak_centroid.x;
    mx.second += 1;
    auto& my = mean_y[group_y.find(i)];
    my.first += cs.corners[i].peak_centroid.y;
    my.second += 1;
  }
  std::vector<Vec2> snapped(nc);
  for (int i = 0; i < nc; ++i) {
    if (!selected(i)) continue;
    const auto& mx = mean_x[group_x.find(i)];
    const auto& my = mean_y[group_y.find(i)];
    snapped[i] = {mx.first / mx.second, my.first / my.second};
  }

  // Corners, canonically ordered by position.
  std::vector<int> selected_corners;
  for (int i = 0; i < nc; ++i)
    if (selected(i)) selected_corners.push_back(i);
  std::sort(selected_corners.begin(), selected_corners.end(), [&snapped](int a, int b) {
    return std::tie(snapped[a].y, snapped[a].x) < std::tie(snapped[b].y, snapped[b].x);
  });
  std::vector<int> final_id(nc, -1);
  Floorplan plan;
  for (size_t k = 0; k < selected_corners.size(); ++k) {
    const int i = selected_corners[k];
    final_id[i] = static_cast<int>(k);
    plan.corners.push_back({static_cast<int>(k), snapped[i], cs.corners[i].junction});
  }

  // Walls.
  std::vector<std::pair<Vec2, Vec2>> wall_segments;
  std::vector<int> wall_final_index(cs.walls.size(), -1);
  for (size_t w = 0; w < cs.walls.size(); ++w) {
    if (!selected(res.model.wall_base + static_cast<int>(w))) continue;
    const WallCandidate& wall = cs.walls[w];
    wall_final_index[w] = static_cast<int>(plan.walls.size());
    plan.walls.push_back({final_id[wall.a], final_id[wall.b], kDefaultWallThickness});
    wall_segments.emplace_back(snapped[wall.a], snapped[wall.b]);
  }

  // Rooms from the enclosed faces.
  plan.rooms = assemble_rooms(wall_segments, stack);

  // Openings: snapped onto their selected host wall; a door when the host
  // wall borders two rooms, a window otherwise.
  for (size_t o = 0; o < cs.openings.size(); ++o) {
    if (!selected(res.model.opening_base + static_cast<int>(o))) continue;
    const OpeningCandidate& cand = cs.openings[o];
    int host = -1;
    double host_dist = 0.0;
    for (int w : cand.host_walls) {
      if (wall_final_index[w] < 0) continue;
      const auto& [wa, wb] = wall_segments[wall_final_index[w]];
      const double d = std::max(point_segment_distance(cand.p1, wa, wb),
                                point_segment_distance(cand.p2, wa, wb));
      if (host < 0 || d < host_dist) {
        host = wall_final_index[w];
        host_dist = d;
      }
    }
    if (host < 0) continue;  // no selected host; C3 normally prevents this
    const auto& [wa, wb] = wall_segments[host];
    Opening opening;
    opening.wall = host;
    if (cand.horizontal) {
      const double lo = std::min(wa.x, wb.x), hi = std::max(wa.x, wb.x);
      opening.p1 = {std::clamp(cand.p1.x, lo, hi), wa.y};
      opening.p2 = {std::clamp(cand.p2.x, lo, hi), wa.y};
    } else {
      const double lo = std::min(wa.y, wb.y), hi = std::max(wa.y, wb.y);
      opening.p1 = {wa.x, std::clamp(cand.p1.y, lo, hi)};
      opening.p2 = {wa.x, std::clamp(cand.p2.y, lo, hi)};
    }
    if (opening.p1 == opening.p2) continue;
    int rooms_touching = 0;
    for (const Room& room : plan.rooms)
      if (segment_room_overlap(wa, wb, room) >= 1.0) ++rooms_touching;
    opening.kind = rooms_touching >= 2 ? OpeningKind::Door : OpeningKind::Window;
    plan.openings.push_back(opening);
  }

  // Icons.
  for (size_t i = 0; i < cs.icons.size(); ++i) {
    if (!selected(res.model.icon_base + static_cast<int>(i))) continue;
    plan.icons.push_back({cs.icons[i].kind, cs.icons[i].rect});
  }

  res.plan = std::move(plan);
  return res;
}

Floorplan reconstruct_floorplan(const HeatmapStack& stack) {
  return reconstruct_detailed(stack).plan;
}

}  // namespace vecplan
