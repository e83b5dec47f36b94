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

#include "vecplan/heatmap.hpp"
#include "vecplan/point_cloud.hpp"

namespace vecplan {

struct NoiseConfig {
  double heatmap_sigma = 0.0;
  double dropout_prob = 0.0;
  double jitter_px = 0.0;
};

// Defaults target the benchmark statistics (per-scan averages: 5.2 rooms,
// 9.1 icons, 9.9 openings, 18.1 corners, 63.8 m^2).
struct SynthConfig {
  uint64_t seed = 0;
  double room_count_mean = 5.2;
  double room_count_std = 1.8;
  double icon_count_mean = 9.1;
  double icon_count_std = 4.5;
  double opening_count_mean = 9.9;
  double opening_count_std = 2.9;
  double corner_count_mean = 18.1;  // emergent, not directly sampled
  double area_mean_m2 = 63.8;
  double area_std_m2 = 13.0;
  NoiseConfig noise;
};

// Recursive axis-aligned splitting into rooms (minimum side 1.5 m), doors on
// shared walls keeping the room adjacency graph connected, windows on
// exterior walls, icons placed without overlap. The result passes validate()
// and carries a physical-scale domain. Deterministic per config.seed.
Floorplan gen_floorplan(const SynthConfig& config);

// Surface samples (walls up to 2.5 m, floor, icon boxes) with 1 cm gaussian
// position noise. Counts are Poisson in density * area. Deterministic per
// seed. Throws when the plan lacks walls or a domain.
PointCloud sample_scan(const Floorplan& plan, double density_per_m2, uint64_t seed);

// Stress model for clean ground-truth stacks: jitters each geometry disk by
// U[-jitter, jitter]^2, deletes it with dropout_prob, adds clipped gaussian
// noise to geometry channels and renormalized noise to semantic PDFs.
HeatmapStack corrupt_heatmaps(const HeatmapStack& stack, const NoiseConfig& noise, uint64_t seed);

}  // namespace vecplan
