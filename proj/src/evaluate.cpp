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

#include "vecplan/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

#include <json.hpp>

namespace vecplan {

namespace {

PrecisionRecall from_counts(int matches, size_t pred, size_t gt) {
  PrecisionRecall pr;
  pr.matches = matches;
  pr.precision = pred == 0 ? 1.0 : static_cast<double>(matches) / static_cast<double>(pred);
  pr.recall = gt == 0 ? 1.0 : static_cast<double>(matches) / static_cast<double>(gt);
  return pr;
}

struct ScoredPair {
  double score;  // lower is better
  int pred;
  int gt;
};

// Greedy one-to-one matching over pairs sorted by ascending score.
int greedy_match(std::vector<ScoredPair> pairs, size_t n_pred, size_t n_gt,
                 std::vector<int>* pred_to_gt = nullptr) {
  std::sort(pairs.begin(), pairs.end(), [](const ScoredPair& a, const ScoredPair& b) {
    return std::tie(a.score, a.pred, a.gt) < std::tie(b.score, b.pred, b.gt);
  });
  std::vector<uint8_t> pred_used(n_pred, 0), gt_used(n_gt, 0);
  if (pred_to_gt) pred_to_gt->assign(n_pred, -1);
  int matches = 0;
  for (const ScoredPair& p : pairs) {
    if (pred_used[p.pred] || gt_used[p.gt]) continue;
    pred_used[p.pred] = gt_used[p.gt] = 1;
    if (pred_to_gt) (*pred_to_gt)[p.pred] = p.gt;
    ++matches;
  }
  return matches;
}

}  // namespace

PrecisionRecall eval_corners(const std::vector<Vec2>& pred, const std::vector<Vec2>& gt) {
  std::vector<ScoredPair> pairs;
  for (size_t i = 0; i < pred.size(); ++i) {
    for (size_t j = 0; j < gt.size(); ++j) {
      const double d = distance(pred[i], gt[j]);
      if (d < kCornerMatchRadius)
        pairs.push_back({d, static_cast<int>(i), static_cast<int>(j)});
    }
  }
  const int matches = greedy_match(std::move(pairs), pred.size(), gt.size());
  return from_counts(matches, pred.size(), gt.size());
}

namespace {

// Max end-point distance under the better of the two end-point orderings.
double opening_distance(const Opening& a, const Opening& b) {
  const double straight = std::max(distance(a.p1, b.p1), distance(a.p2, b.p2));
  const double crossed = std::max(distance(a.p1, b.p2), distance(a.p2, b.p1));
  return std::min(straight, crossed);
}

std::vector<int> match_rooms_by_iou(const Floorplan& pred, const Floorplan& gt,
                                    double threshold) {
  std::vector<ScoredPair> pairs;
  for (size_t i = 0; i < pred.rooms.size(); ++i) {
    for (size_t j = 0; j < gt.rooms.size(); ++j) {
      const double iou = polygon_iou(pred.rooms[i].boundary, gt.rooms[j].boundary);
      if (iou > threshold) pairs.push_back({-iou, static_cast<int>(i), static_cast<int>(j)});
    }
  }
  std::vector<int> pred_to_gt;
  greedy_match(std::move(pairs), pred.rooms.size(), gt.rooms.size(), &pred_to_gt);
  return pred_to_gt;
}

}  // namespace

MidLevelReport eval_mid(const Floorplan& pred, const Floorplan& gt) {
  MidLevelReport report;

  {
    std::vector<ScoredPair> pairs;
    for (size_t i = 0; i < pred.openings.size(); ++i) {
      for (size_t j = 0; j < gt.openings.size(); ++j) {
        if (pred.openings[i].kind != gt.openings[j].kind) continue;
        const double d = opening_distance(pred.openings[i], gt.openings[j]);
        if (d < kCornerMatchRadius)
          pairs.push_back({d, static_cast<int>(i), static_cast<int>(j)});
      }
    }
    report.opening = from_counts(greedy_match(std::move(pairs), pred.openings.size(),
                                              gt.openings.size()),
                                 pred.openings.size(), gt.openings.size());
  }
  {
    std::vector<ScoredPair> pairs;
    for (size_t i = 0; i < pred.icons.size(); ++i) {
      for (size_t j = 0; j < gt.icons.size(); ++j) {
        if (pred.icons[i].kind != gt.icons[j].kind) continue;
        const double iou = rect_iou(pred.icons[i].rect, gt.icons[j].rect);
        if (iou > 0.5) pairs.push_back({-iou, static_cast<int>(i), static_cast<int>(j)});
      }
    }
    report.icon = from_counts(greedy_match(std::move(pairs), pred.icons.size(), gt.icons.size()),
                              pred.icons.size(), gt.icons.size());
  }
  {
    std::vector<ScoredPair> pairs;
    for (size_t i = 0; i < pred.rooms.size(); ++i) {
      for (size_t j = 0; j < gt.rooms.size(); ++j) {
        const double iou = polygon_iou(pred.rooms[i].boundary, gt.rooms[j].boundary);
        if (iou > 0.7) pairs.push_back({-iou, static_cast<int>(i), static_cast<int>(j)});
      }
    }
    report.room = from_counts(greedy_match(std::move(pairs), pred.rooms.size(), gt.rooms.size()),
                              pred.rooms.size(), gt.rooms.size());
  }
  return report;
}

namespace {

double wall_room_overlap(const Floorplan& plan, const Wall& wall, const Room& room) {
  const Corner* a = plan.corner_by_id(wall.a);
  const Corner* b = plan.corner_by_id(wall.b);
  if (a == nullptr || b == nullptr) return 0.0;
  const Vec2& p = a->position;
  const Vec2& q = b->position;
  const bool horizontal = std::abs(q.y - p.y) <= std::abs(q.x - p.x);
  double total = 0.0;
  const size_t n = room.boundary.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec2& c = room.boundary[i];
    const Vec2& d = room.boundary[(i + 1) % n];
    if (horizontal) {
      if (std::abs(d.y - c.y) > std::abs(d.x - c.x)) continue;
      if (std::abs(c.y - p.y) > kAxisTolerance) continue;
      total += std::max(0.0, std::min(std::max(p.x, q.x), std::max(c.x, d.x)) -
                                 std::max(std::min(p.x, q.x), std::min(c.x, d.x)));
    } else {
      if (std::abs(d.x - c.x) > std::abs(d.y - c.y)) continue;
      if (std::abs(c.x - p.x) > kAxisTolerance) continue;
      total += std::max(0.0, std::min(std::max(p.y, q.y), std::max(c.y, d.y)) -
                                 std::max(std::min(p.y, q.y), std::min(c.y, d.y)));
    }
  }
  return total;
}

}  // namespace

std::set<std::pair<int, int>> door_connected_rooms(const Floorplan& plan) {
  std::set<std::pair<int, int>> connected;
  for (const Opening& opening : plan.openings) {
    if (opening.kind != OpeningKind::Door) continue;
    if (opening.wall < 0 || opening.wall >= static_cast<int>(plan.walls.size())) continue;
    const Wall& wall = plan.walls[opening.wall];
    std::vector<int> touching;
    for (size_t r = 0; r < plan.rooms.size(); ++r) {
      if (wall_room_overlap(plan, wall, plan.rooms[r]) >= 1.0)
        touching.push_back(static_cast<int>(r));
    }
    for (size_t i = 0; i < touching.size(); ++i)
      for (size_t j = i + 1; j < touching.size(); ++j)
        connected.emplace(touching[i], touching[j]);
  }
  return connected;
}

double eval_relationships(const Floorplan& pred, const Floorplan& gt) {
  if (gt.rooms.empty()) return 1.0;

  const std::vector<int> pred_to_gt = match_rooms_by_iou(pred, gt, 0.5);
  std::vector<int> gt_to_pred(gt.rooms.size(), -1);
  for (size_t p = 0; p < pred_to_gt.size(); ++p)
    if (pred_to_gt[p] >= 0) gt_to_pred[pred_to_gt[p]] = static_cast<int>(p);

  const auto gt_connected = door_connected_rooms(gt);
  const auto pred_connected = door_connected_rooms(pred);

  const auto neighbors = [](const std::set<std::pair<int, int>>& edges, int room) {
    std::set<int> out;
    for (const auto& [a, b] : edges) {
      if (a == room) out.insert(b);
      if (b == room) out.insert(a);
    }
    return out;
  };

  int correct = 0;
  for (size_t g = 0; g < gt.rooms.size(); ++g) {
    const int p = gt_to_pred[g];
    if (p < 0) continue;  // unmatched room
    if (pred.rooms[p].kind != gt.rooms[g].kind) continue;

    const std::set<int> gt_neighbors = neighbors(gt_connected, static_cast<int>(g));
    bool ok = true;
    std::set<int> expected_pred_neighbors;
    for (int n : gt_neighbors) {
      const int pn = gt_to_pred[n];
      if (pn < 0 || pred.rooms[pn].kind != gt.rooms[n].kind) {
        ok = false;
        break;
      }
      expected_pred_neighbors.insert(pn);
    }
    if (!ok) continue;
    // Connected to exactly the counterparts of the ground-truth neighbors.
    if (neighbors(pred_connected, p) != expected_pred_neighbors) continue;
    ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(gt.rooms.size());
}

namespace {

std::vector<Vec2> sample_walls(const Floorplan& plan) {
  constexpr int kSamplesPerWall = 100;
  std::vector<Vec2> samples;
  samples.reserve(plan.walls.size() * kSamplesPerWall);
  for (const Wall& wall : plan.walls) {
    const Vec2 a = plan.corner_by_id(wall.a)->position;
    const Vec2 b = plan.corner_by_id(wall.b)->position;
    for (int i = 0; i < kSamplesPerWall; ++i) {
      const double t = static_cast<double>(i) / (kSamplesPerWall - 1);
      samples.push_back(a + (b - a) * t);
    }
  }
  return samples;
}

double mean_nearest(const std::vector<Vec2>& from, const std::vector<Vec2>& to) {
  double total = 0.0;
  for (const Vec2& p : from) {
    double best = std::numeric_limits<double>::infinity();
    for (const Vec2& q : to) best = std::min(best, distance(p, q));
    total += best;
  }
  return total / static_cast<double>(from.size());
}

}  // namespace

double wall_line_distance(const Floorplan& pred, const Floorplan& gt) {
  if (pred.walls.empty() || gt.walls.empty())
    throw std::invalid_argument("wall_line_distance: a plan has no walls");
  const std::vector<Vec2> pred_samples = sample_walls(pred);
  const std::vector<Vec2> gt_samples = sample_walls(gt);
  return 0.5 * (mean_nearest(pred_samples, gt_samples) + mean_nearest(gt_samples, pred_samples));
}

MetricReport evaluate_plans(const Floorplan& pred, const Floorplan& gt) {
  MetricReport report;
  std::vector<Vec2> pred_corners, gt_corners;
  for (const Corner& c : pred.corners) pred_corners.push_back(c.position);
  for (const Corner& c : gt.corners) gt_corners.push_back(c.position);
  report.corner = eval_corners(pred_corners, gt_corners);

  const MidLevelReport mid = eval_mid(pred, gt);
  report.opening = mid.opening;
  report.icon = mid.icon;
  report.room = mid.room;
  report.relationship = eval_relationships(pred, gt);
  if (!pred.walls.empty() && !gt.walls.empty())
    report.line_distance = wall_line_distance(pred, gt);
  return report;
}

std::string metric_report_json(const MetricReport& report) {
  nlohmann::ordered_json doc;
  const auto pr = [](const PrecisionRecall& v) {
    return nlohmann::ordered_json{
        {"precision", v.precision}, {"recall", v.recall}, {"matches", v.matches}};
  };
  doc["corner"] = pr(report.corner);
  doc["opening"] = pr(report.opening);
  doc["icon"] = pr(report.icon);
  doc["room"] = pr(report.room);
  doc["relationship"] = report.relationship;
  if (report.line_distance) doc["line_distance"] = *report.line_distance;
  else doc["line_distance"] = nullptr;
  return doc.dump(2) + "\n";
}

std::string metric_report_table(const MetricReport& report) {
  char buf[64];
  const auto cell = [&buf](const PrecisionRecall& v) {
    std::snprintf(buf, sizeof(buf), "%5.1f/%5.1f", 100.0 * v.precision, 100.0 * v.recall);
    return std::string(buf);
  };
  std::ostringstream out;
  out << "        wall         door         icon         room  relationship\n";
  out << " " << cell(report.corner) << "  " << cell(report.opening) << "  " << cell(report.icon)
      << "  " << cell(report.room);
  std::snprintf(buf, sizeof(buf), "  %12.1f\n", 100.0 * report.relationship);
  out << buf;
  if (report.line_distance) {
    std::snprintf(buf, sizeof(buf), "line distance: %.2f px\n", *report.line_distance);
    out << buf;
  }
  return out.str();
}

}  // namespace vecplan
