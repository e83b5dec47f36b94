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

#include "vecplan/feature_grid.hpp"
#include "vecplan/heatmap.hpp"
#include "vecplan/point_cloud.hpp"

// Straight-line serial implementations of the data-parallel kernels. They
// are the reference the OpenMP paths are tested against (exact for integer
// binning, 1e-6 relative for floating-point sums) and the baseline for the
// kernel benchmark.
namespace vecplan::reference {

Raster density_image(const PointCloud& cloud, const FloorplanDomain& domain);

FeatureGrid pool_points_to_grid(const PointCloud& cloud, const FloorplanDomain& domain,
                                int resolution = kGridResolution);

std::vector<double> unpool_grid_to_points(const FeatureGrid& grid, const PointCloud& cloud,
                                          const FloorplanDomain& domain);

PointCloud unproject_frame(const CameraFrame& frame);

double sigmoid_ce(std::span<const double> logits, std::span<const double> labels);
double softmax_ce(std::span<const double> logits, int classes, std::span<const int> labels);

}  // namespace vecplan::reference
