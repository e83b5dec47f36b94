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

#include <span>
#include <string>
#include <vector>

#include "vecplan/floorplan.hpp"

namespace vecplan {

// Channel layout of the intermediate representation (K = 41):
//   [0..12]  room-corner junction heatmaps, enum order I_0..I_270, L_0..,
//            T_0.., X
//   [13..16] opening end-point heatmaps by orientation +X, +Y, -X, -Y
//   [17..20] icon-corner heatmaps TL, TR, BR, BL
//   [21..30] room-semantic PDF: background, wall, then the 8 room types
//   [31..40] icon-semantic PDF: background, then the 9 icon types
namespace channels {
inline constexpr int kJunctionBase = 0;
inline constexpr int kOpeningBase = 13;
inline constexpr int kIconCornerBase = 17;
inline constexpr int kRoomSemanticBase = 21;
inline constexpr int kRoomBackground = 21;
inline constexpr int kRoomWall = 22;
inline constexpr int kRoomTypeBase = 23;
inline constexpr int kRoomSemanticCount = 10;
inline constexpr int kIconSemanticBase = 31;
inline constexpr int kIconBackground = 31;
inline constexpr int kIconTypeBase = 32;
inline constexpr int kIconSemanticCount = 10;
inline constexpr int kGeometryCount = 21;  // junction + opening + icon corners
inline constexpr int kCount = 41;

std::vector<std::string> names();
}  // namespace channels

// Multi-channel 256x256 raster, plane-major: channel c occupies a contiguous
// resolution^2 block.
struct HeatmapStack {
  int resolution = kGridResolution;
  int channels = channels::kCount;
  std::vector<double> data;
  std::vector<std::string> names;

  HeatmapStack() = default;
  HeatmapStack(int res, int k)
      : resolution(res), channels(k),
        data(static_cast<size_t>(res) * res * k, 0.0) {}

  size_t plane_size() const { return static_cast<size_t>(resolution) * resolution; }
  std::span<double> plane(int c) { return {data.data() + c * plane_size(), plane_size()}; }
  std::span<const double> plane(int c) const {
    return {data.data() + c * plane_size(), plane_size()};
  }
  double& at(int c, int i, int j) {
    return data[c * plane_size() + static_cast<size_t>(i) * resolution + j];
  }
  double at(int c, int i, int j) const {
    return data[c * plane_size() + static_cast<size_t>(i) * resolution + j];
  }
};

// Rasterizes the ground-truth stack for a valid plan: radius-11 unit disks
// for corner/end-point channels (max under overlap), one-hot semantic PDFs
// (rooms painted in file order, walls on top with a 3 px wide strip).
HeatmapStack render_ground_truth(const Floorplan& plan);

// Pixels covered by an axis-aligned segment dilated to the given odd width,
// clipped to the grid; row/col indices are rounded to the nearest pixel.
std::vector<std::pair<int, int>> rasterize_segment_strip(const Vec2& a, const Vec2& b, int width,
                                                         int resolution = kGridResolution);

// Pixels covered by an axis-aligned rect (inclusive bounds, rounded).
std::vector<std::pair<int, int>> rasterize_rect(const Rect& r, int resolution = kGridResolution);

// Mean elementwise sigmoid cross entropy; `logits` are raw scores, `labels`
// in [0, 1]. Numerically stabilized. Throws on shape mismatch.
double sigmoid_ce(std::span<const double> logits, std::span<const double> labels);

// Mean over pixels of -log softmax(logits)[label]; logits are row-major
// N x classes. Throws on a label out of range.
double softmax_ce(std::span<const double> logits, int classes, std::span<const int> labels);

// FHM1 container: magic, u32 resolution, u32 K, u32 layout-version (=1),
// length-prefixed UTF-8 JSON channel-name array, then K row-major f32 planes.
void save_heatmap(const HeatmapStack& stack, const std::string& path);
HeatmapStack load_heatmap(const std::string& path);

}  // namespace vecplan
