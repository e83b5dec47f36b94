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

#include <string>
#include <vector>

#include "vecplan/heatmap.hpp"

namespace vecplan {

// Candidates keep a primitive selectable only when its confidence reaches
// this value: weight = confidence - threshold.
inline constexpr double kConfidenceOffset = 0.5;
inline constexpr double kPeakThreshold = 0.5;
inline constexpr int kMinComponentArea = 6;  // components of area > 5 pixels survive
inline constexpr int kWallScoreWidth = 7;
inline constexpr int kOpeningScoreWidth = 5;

// A thresholded connected component and its peak.
struct Peak {
  Vec2 position;       // argmax pixel (ties resolved toward the max-set centroid)
  Vec2 peak_centroid;  // centroid of the max-valued pixels, sub-pixel
  double value = 0.0;
  std::vector<std::pair<int, int>> component;  // (row, col) pixels
  int row_min = 0, row_max = 0, col_min = 0, col_max = 0;
};

struct CornerCandidate : Peak {
  JunctionType junction = JunctionType::X;
};

struct WallCandidate {
  int a = 0, b = 0;  // corner candidate indices
  Vec2 p1, p2;       // peaks snapped to the shared axis
  bool horizontal = true;
  double confidence = 0.0;
  double weight = 0.0;
};

struct OpeningCandidate {
  Vec2 p1, p2;
  bool horizontal = true;
  double confidence = 0.0;
  double weight = 0.0;
  std::vector<int> host_walls;  // wall candidate indices geometrically hosting it
};

struct IconCandidate {
  Rect rect;
  IconKind kind = IconKind::Table;
  double confidence = 0.0;
  double weight = 0.0;
};

struct CandidateSet {
  std::vector<CornerCandidate> corners;
  std::vector<WallCandidate> walls;
  std::vector<OpeningCandidate> openings;
  std::vector<IconCandidate> icons;
};

// Thresholds one plane at 0.5, takes 4-connected components, discards those
// with area <= 5 px, and emits each survivor's peak. Canonical order: by
// (row, col) of the peak.
std::vector<Peak> extract_peaks(std::span<const double> plane, int resolution,
                                double threshold = kPeakThreshold,
                                int min_area = kMinComponentArea);

std::vector<CornerCandidate> extract_corners(const HeatmapStack& stack);

// Walls between corner pairs whose components overlap along X or Y, filtered
// by junction admissibility. Confidence/weight are left zero; scoring needs
// the stack (see extract_candidates).
std::vector<WallCandidate> gen_wall_candidates(const std::vector<CornerCandidate>& corners);

// Mean of the wall-semantic channel over the segment dilated to `width`.
double score_line(const HeatmapStack& stack, const Vec2& a, const Vec2& b, int width);

std::vector<OpeningCandidate> gen_opening_candidates(const HeatmapStack& stack,
                                                     const std::vector<WallCandidate>& walls);

std::vector<IconCandidate> gen_icon_candidates(const HeatmapStack& stack);

// Full candidate generation with wall/opening scoring.
CandidateSet extract_candidates(const HeatmapStack& stack);

// Debug dump mirroring the type fields.
std::string candidate_set_to_json(const CandidateSet& set);

}  // namespace vecplan
