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

#include "vecplan/point_cloud.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "vecplan/rng.hpp"

namespace vecplan {

PointCloud normalize(const PointCloud& cloud) {
  if (cloud.empty()) throw std::invalid_argument("normalize: empty cloud");
  double sx = 0.0, sy = 0.0, sz = 0.0;
  for (const Vec3& p : cloud.positions) {
    sx += p.x;
    sy += p.y;
    sz += p.z;
  }
  const double n = static_cast<double>(cloud.size());
  const Vec3 centroid{sx / n, sy / n, sz / n};
  PointCloud out = cloud;
  for (Vec3& p : out.positions) {
    p.x -= centroid.x;
    p.y -= centroid.y;
    p.z -= centroid.z;
  }
  return out;
}

PointCloud subsample(const PointCloud& cloud, size_t k, uint64_t seed) {
  if (k == 0) throw std::invalid_argument("subsample: k must be >= 1");
  const size_t n = cloud.size();
  if (n <= k) return cloud;

  // Partial Fisher-Yates over indices, then sort so the relative order of
  // the surviving points is preserved.
  std::vector<uint32_t> indices(n);
  std::iota(indices.begin(), indices.end(), 0u);
  Rng rng(seed);
  for (size_t i = 0; i < k; ++i) {
    const size_t j = i + static_cast<size_t>(rng.uniform_index(n - i));
    std::swap(indices[i], indices[j]);
  }
  indices.resize(k);
  std::sort(indices.begin(), indices.end());

  PointCloud out;
  out.feature_channels = cloud.feature_channels;
  out.positions.reserve(k);
  if (cloud.has_colors()) out.colors.reserve(k);
  if (cloud.has_features()) out.features.reserve(k * cloud.feature_channels);
  for (uint32_t idx : indices) {
    out.positions.push_back(cloud.positions[idx]);
    if (cloud.has_colors()) out.colors.push_back(cloud.colors[idx]);
    if (cloud.has_features()) {
      const double* row = cloud.feature_row(idx);
      out.features.insert(out.features.end(), row, row + cloud.feature_channels);
    }
  }
  return out;
}

namespace {

Vec2 rotate_quarter(const Vec2& v, int quarter_turns) {
  switch (((quarter_turns % 4) + 4) % 4) {
    case 0: return v;
    case 1: return {-v.y, v.x};
    case 2: return {-v.x, -v.y};
    default: return {v.y, -v.x};
  }
}

Vec2 rotate_about(const Vec2& p, const Vec2& center, int quarter_turns) {
  return center + rotate_quarter(p - center, quarter_turns);
}

Rect rotate_rect(const Rect& r, const Vec2& center, int quarter_turns) {
  const Vec2 a = rotate_about({r.xmin, r.ymin}, center, quarter_turns);
  const Vec2 b = rotate_about({r.xmax, r.ymax}, center, quarter_turns);
  return {std::min(a.x, b.x), std::min(a.y, b.y), std::max(a.x, b.x), std::max(a.y, b.y)};
}

}  // namespace

AugmentResult augment_with(const PointCloud& cloud, const Floorplan& plan, double scale_factor,
                           int quarter_turns) {
  if (!plan.domain) throw std::invalid_argument("augment: plan has no domain");
  quarter_turns = ((quarter_turns % 4) + 4) % 4;

  AugmentResult out;
  out.scale_factor = scale_factor;
  out.quarter_turns = quarter_turns;

  // World: similarity transform s * R about the world origin, Z scaled too.
  out.cloud = cloud;
  for (Vec3& p : out.cloud.positions) {
    const Vec2 xy = rotate_quarter({p.x, p.y}, quarter_turns);
    p = {scale_factor * xy.x, scale_factor * xy.y, scale_factor * p.z};
  }

  // Grid: pure rotation about the pixel center; the domain absorbs the scale
  // so that world_to_grid(transformed world) == rotated grid coordinates.
  out.plan = plan;
  const double c = kGridResolution / 2.0;
  const Vec2 center{c, c};
  for (Corner& corner : out.plan.corners) {
    corner.position = rotate_about(corner.position, center, quarter_turns);
    corner.junction = rotated(corner.junction, quarter_turns);
  }
  for (Opening& o : out.plan.openings) {
    o.p1 = rotate_about(o.p1, center, quarter_turns);
    o.p2 = rotate_about(o.p2, center, quarter_turns);
  }
  for (Icon& icon : out.plan.icons) icon.rect = rotate_rect(icon.rect, center, quarter_turns);
  for (Room& room : out.plan.rooms) {
    for (Vec2& v : room.boundary) v = rotate_about(v, center, quarter_turns);
  }

  const FloorplanDomain& d = *plan.domain;
  FloorplanDomain nd = d;
  nd.scale = scale_factor * d.scale;
  // Derived from requiring grid'(s*R*w) = rotate_about(grid(w), center):
  // origin' = s * (R*(origin + scale*center) - scale*center).
  const Vec2 shifted{d.origin.x + d.scale * c, d.origin.y + d.scale * c};
  const Vec2 rotated_shift = rotate_quarter(shifted, quarter_turns);
  nd.origin = {scale_factor * (rotated_shift.x - d.scale * c),
               scale_factor * (rotated_shift.y - d.scale * c)};
  out.plan.domain = nd;
  return out;
}

AugmentResult augment(const PointCloud& cloud, const Floorplan& plan, uint64_t seed) {
  Rng rng(seed);
  const double s = rng.uniform(0.5, 1.5);
  const int r = static_cast<int>(rng.uniform_index(4));
  return augment_with(cloud, plan, s, r);
}

namespace {

// Nearest-rank percentile on a sorted vector: the ceil(p*N)-th smallest
// value (1-based), clamped to the first element for tiny p.
double nearest_rank(const std::vector<double>& sorted, double fraction) {
  const size_t n = sorted.size();
  size_t rank = static_cast<size_t>(std::ceil(fraction * static_cast<double>(n)));
  if (rank < 1) rank = 1;
  if (rank > n) rank = n;
  return sorted[rank - 1];
}

}  // namespace

FloorplanDomain compute_domain(const PointCloud& cloud) {
  if (cloud.size() < 2) throw std::invalid_argument("compute_domain: need at least 2 points");

  std::vector<double> xs(cloud.size()), ys(cloud.size());
  for (size_t i = 0; i < cloud.size(); ++i) {
    xs[i] = cloud.positions[i].x;
    ys[i] = cloud.positions[i].y;
  }
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());

  const double x_lo = nearest_rank(xs, 0.025), x_hi = nearest_rank(xs, 0.975);
  const double y_lo = nearest_rank(ys, 0.025), y_hi = nearest_rank(ys, 0.975);
  const double wx = x_hi - x_lo;
  const double wy = y_hi - y_lo;
  if (wx <= 0.0 && wy <= 0.0)
    throw std::invalid_argument("compute_domain: degenerate cloud (coincident XY)");

  const double ex_lo = x_lo - 0.05 * wx, ex_hi = x_hi + 0.05 * wx;
  const double ey_lo = y_lo - 0.05 * wy, ey_hi = y_hi + 0.05 * wy;
  const double ew = ex_hi - ex_lo;
  const double eh = ey_hi - ey_lo;

  FloorplanDomain domain;
  domain.resolution = kGridResolution;
  domain.scale = std::max(ew, eh) / kGridResolution;
  const double margin_px_x = (kGridResolution - ew / domain.scale) / 2.0;
  const double margin_px_y = (kGridResolution - eh / domain.scale) / 2.0;
  domain.origin = {ex_lo - margin_px_x * domain.scale, ey_lo - margin_px_y * domain.scale};
  return domain;
}

Raster density_image(const PointCloud& cloud, const FloorplanDomain& domain) {
  const int res = domain.resolution;
  Raster out(res, res);
  const size_t n = cloud.size();

  // Integer counts: per-thread partial rasters reduced in thread order make
  // the parallel result exactly equal to the serial one.
#ifdef _OPENMP
  const int max_threads = omp_get_max_threads();
#else
  const int max_threads = 1;
#endif
  if (max_threads > 1 && n > 4096) {
    std::vector<Raster> partial(max_threads, Raster(res, res));
#pragma omp parallel
    {
#ifdef _OPENMP
      Raster& mine = partial[omp_get_thread_num()];
#else
      Raster& mine = partial[0];
#endif
#pragma omp for schedule(static)
      for (long long i = 0; i < static_cast<long long>(n); ++i) {
        const Vec3& p = cloud.positions[i];
        if (const auto cell = domain.cell_of(p.x, p.y)) mine.at(cell->first, cell->second) += 1.0;
      }
    }
    for (const Raster& part : partial) {
      for (size_t k = 0; k < out.data.size(); ++k) out.data[k] += part.data[k];
    }
  } else {
    for (size_t i = 0; i < n; ++i) {
      const Vec3& p = cloud.positions[i];
      if (const auto cell = domain.cell_of(p.x, p.y)) out.at(cell->first, cell->second) += 1.0;
    }
  }
  return out;
}

}  // namespace vecplan
