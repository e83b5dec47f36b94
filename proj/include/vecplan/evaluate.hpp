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
#include <set>
#include <string>
#include <vector>

#include "vecplan/floorplan.hpp"

namespace vecplan {

struct PrecisionRecall {
  double precision = 1.0;  // 0/0 counts as a perfect prediction
  double recall = 1.0;
  int matches = 0;
};

// Low-level metric: greedy one-to-one matching in increasing distance order;
// a pair matches iff the distance is below 10 px and each is the other's
// nearest unmatched counterpart.
PrecisionRecall eval_corners(const std::vector<Vec2>& pred, const std::vector<Vec2>& gt);

struct MidLevelReport {
  PrecisionRecall opening;  // max end-point distance < 10 px, same kind
  PrecisionRecall icon;     // rect IOU > 0.5, same kind
  PrecisionRecall room;     // polygon IOU > 0.7 (type not required here)
};

MidLevelReport eval_mid(const Floorplan& pred, const Floorplan& gt);

// High-level metric: the ratio of ground-truth rooms whose door-connectivity
// neighborhood is reproduced with IOU > 0.5 matches and correct room types.
double eval_relationships(const Floorplan& pred, const Floorplan& gt);

// Symmetric mean distance between 100-point samplings of the wall segments.
// Throws when either plan has no walls.
double wall_line_distance(const Floorplan& pred, const Floorplan& gt);

// Pairs of room indices connected through at least one door.
std::set<std::pair<int, int>> door_connected_rooms(const Floorplan& plan);

struct MetricReport {
  PrecisionRecall corner;
  PrecisionRecall opening;
  PrecisionRecall icon;
  PrecisionRecall room;
  double relationship = 1.0;
  std::optional<double> line_distance;  // absent when a plan has no walls
};

MetricReport evaluate_plans(const Floorplan& pred, const Floorplan& gt);

std::string metric_report_json(const MetricReport& report);
// Aligned text table in the column order wall / door / icon / room /
// relationship, percentages as P/R.
std::string metric_report_table(const MetricReport& report);

}  // namespace vecplan
