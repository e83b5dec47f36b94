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

#include <array>
#include <cstdint>
#include <vector>

#include "vecplan/floorplan.hpp"
#include "vecplan/geometry.hpp"

namespace vecplan {

// 3D points with optional per-point color and feature vectors, stored
// structure-of-arrays. All feature vectors share one length.
struct PointCloud {
  std::vector<Vec3> positions;
  std::vector<std::array<uint8_t, 3>> colors;  // empty, or one entry per point
  std::vector<double> features;                // row-major N x C, empty when C == 0
  int feature_channels = 0;

  size_t size() const { return positions.size(); }
  bool empty() const { return positions.empty(); }
  bool has_colors() const { return !colors.empty(); }
  bool has_features() const { return feature_channels > 0; }
  const double* feature_row(size_t i) const { return features.data() + i * feature_channels; }
  double* feature_row(size_t i) { return features.data() + i * feature_channels; }
};

// Single-channel raster, row-major.
struct Raster {
  int width = 0;
  int height = 0;
  std::vector<double> data;

  Raster() = default;
  Raster(int w, int h) : width(w), height(h), data(static_cast<size_t>(w) * h, 0.0) {}
  double& at(int i, int j) { return data[static_cast<size_t>(i) * width + j]; }
  double at(int i, int j) const { return data[static_cast<size_t>(i) * width + j]; }
};

// Pure translation moving the centroid to the origin. Throws on empty input.
PointCloud normalize(const PointCloud& cloud);

// Uniform sample of exactly k points without replacement (deterministic per
// seed, original order preserved). Returns the cloud unchanged when it has
// at most k points. Throws when k == 0.
PointCloud subsample(const PointCloud& cloud, size_t k, uint64_t seed);

struct AugmentResult {
  PointCloud cloud;
  Floorplan plan;
  double scale_factor = 1.0;  // the sampled similarity scale s
  int quarter_turns = 0;      // the sampled rotation, CCW quarter turns
};

// Applies one scale s and one rotation r to both the cloud and the plan:
// world coordinates transform by the similarity s*R (Z scaled too); the
// plan's grid geometry rotates about the grid center and its domain absorbs
// the scale, so grid distances are preserved while world distances scale by
// exactly s. Requires plan.domain.
AugmentResult augment_with(const PointCloud& cloud, const Floorplan& plan, double scale_factor,
                           int quarter_turns);

// Samples s ~ U[0.5, 1.5] and r in {0deg, 90deg, 180deg, 270deg}, then applies
// augment_with. Deterministic per seed.
AugmentResult augment(const PointCloud& cloud, const Floorplan& plan, uint64_t seed);

// Rectangular floorplan domain from the [2.5th, 97.5th] percentile interval
// per axis (nearest-rank), expanded by 5% of the interval length on each
// side; isotropic scale spans the longer side over 256 px, the rectangle
// centered. Throws when all points share one XY position.
FloorplanDomain compute_domain(const PointCloud& cloud);

// Top-down point count per grid cell; points outside the grid are dropped.
Raster density_image(const PointCloud& cloud, const FloorplanDomain& domain);

}  // namespace vecplan
