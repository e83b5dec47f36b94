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

#include <cstdint>
#include <string>
#include <vector>

#include "vecplan/extract.hpp"

namespace vecplan {

struct IpTerm {
  int var = 0;
  int coef = 0;
};

struct IpConstraint {
  enum class Relation { LessEq, Eq };
  std::vector<IpTerm> terms;
  Relation relation = Relation::LessEq;
  int rhs = 0;
  std::string name;
};

// 0-1 integer program over primitive candidates: one binary variable per
// candidate, a linear objective with the candidate weights, and integer
// constraint rows.
struct IPModel {
  std::vector<double> weights;
  std::vector<std::string> var_names;
  std::vector<IpConstraint> constraints;
  // Variable layout: [corner_base, wall_base) are corners, etc.
  int corner_base = 0, wall_base = 0, opening_base = 0, icon_base = 0;

  int num_vars() const { return static_cast<int>(weights.size()); }
};

struct IPSolution {
  bool feasible = false;
  bool certified = true;  // false when the node cap was hit
  double objective = 0.0;
  std::vector<uint8_t> assignment;
  uint64_t nodes = 0;
};

inline constexpr uint64_t kDefaultNodeCap = 1'000'000;
// Corner candidates of any type this close on a shared wall line exclude
// each other (mirrors the corner matching radius).
inline constexpr double kCornerExclusionRadius = 10.0;
inline constexpr double kIconExclusionIou = 0.3;

// Constraint system:
//   C1  wall -> corner implication per endpoint
//   C2  junction consistency: per selected corner and junction direction
//       exactly one incident wall (conditional equality on the corner)
//   C3  opening containment: an opening needs a hosting wall
//   C4  mutual exclusion of nearby corners on a shared wall line
//   C5  mutual exclusion of icons overlapping with IOU > 0.3
IPModel build_ip(const CandidateSet& candidates);

// Exact maximization by depth-first branch and bound with constraint
// propagation; bound = value so far + positive weights of unfixed variables.
// Deterministic: among optima the lexicographically smallest assignment is
// returned. Independent constraint blocks are solved separately. When the
// node cap is exceeded the best incumbent is returned with certified=false.
IPSolution solve_ip(const IPModel& model, uint64_t node_cap = kDefaultNodeCap);

// Human-readable LP text format (objective + constraints + binaries).
std::string to_lp_format(const IPModel& model);

// Bounded faces of the planar subdivision induced by the wall segments; each
// becomes a Room typed by the mean room-type probability over its interior.
std::vector<Room> assemble_rooms(const std::vector<std::pair<Vec2, Vec2>>& wall_segments,
                                 const HeatmapStack& stack);

struct ReconstructResult {
  Floorplan plan;
  CandidateSet candidates;
  IPModel model;
  IPSolution solution;
};

// extract -> build_ip -> solve_ip -> assemble, producing a plan that passes
// validate().
ReconstructResult reconstruct_detailed(const HeatmapStack& stack,
                                       uint64_t node_cap = kDefaultNodeCap);
Floorplan reconstruct_floorplan(const HeatmapStack& stack);

}  // namespace vecplan
