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

#include "vecplan/feature_grid.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace vecplan {

bool pose_is_rigid(const std::array<double, 16>& pose, double tol) {
  // Rows of the 3x3 block must be orthonormal and the determinant +1.
  const auto row = [&pose](int r) { return Vec3{pose[r * 4 + 0], pose[r * 4 + 1], pose[r * 4 + 2]}; };
  const auto dot3 = [](const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; };
  const Vec3 r0 = row(0), r1 = row(1), r2 = row(2);
  if (std::abs(dot3(r0, r0) - 1.0) > tol) return false;
  if (std::abs(dot3(r1, r1) - 1.0) > tol) return false;
  if (std::abs(dot3(r2, r2) - 1.0) > tol) return false;
  if (std::abs(dot3(r0, r1)) > tol || std::abs(dot3(r0, r2)) > tol || std::abs(dot3(r1, r2)) > tol)
    return false;
  const double det = r0.x * (r1.y * r2.z - r1.z * r2.y) - r0.y * (r1.x * r2.z - r1.z * r2.x) +
                     r0.z * (r1.x * r2.y - r1.y * r2.x);
  if (std::abs(det - 1.0) > tol) return false;
  if (std::abs(pose[12]) > tol || std::abs(pose[13]) > tol || std::abs(pose[14]) > tol ||
      std::abs(pose[15] - 1.0) > tol)
    return false;
  return true;
}

FeatureGrid pool_points_to_grid(const PointCloud& cloud, const FloorplanDomain& domain,
                                int resolution) {
  if (!cloud.has_features())
    throw std::invalid_argument("pool_points_to_grid: cloud carries no features");
  if (cloud.features.size() != cloud.size() * static_cast<size_t>(cloud.feature_channels))
    throw std::invalid_argument("pool_points_to_grid: mixed feature lengths");

  const int c = cloud.feature_channels;
  FloorplanDomain d = domain;
  d.resolution = resolution;
  FeatureGrid grid(resolution, c);
  const size_t n = cloud.size();

#ifdef _OPENMP
  const int max_threads = omp_get_max_threads();
#else
  const int max_threads = 1;
#endif
  if (max_threads > 1 && n > 4096) {
    // Per-thread partial grids, reduced in thread order. Summation order
    // inside a chunk follows point index order; results match the serial
    // sum within 1e-6 relative.
    std::vector<FeatureGrid> partial(max_threads, FeatureGrid(resolution, c));
#pragma omp parallel
    {
#ifdef _OPENMP
      FeatureGrid& mine = partial[omp_get_thread_num()];
#else
      FeatureGrid& mine = partial[0];
#endif
#pragma omp for schedule(static)
      for (long long i = 0; i < static_cast<long long>(n); ++i) {
        const Vec3& p = cloud.positions[i];
        if (const auto cell = d.cell_of(p.x, p.y)) {
          double* dst = mine.cell(cell->first, cell->second);
          const double* src = cloud.feature_row(i);
          for (int k = 0; k < c; ++k) dst[k] += src[k];
        }
      }
    }
    for (const FeatureGrid& part : partial) {
      for (size_t k = 0; k < grid.data.size(); ++k) grid.data[k] += part.data[k];
    }
  } else {
    for (size_t i = 0; i < n; ++i) {
      const Vec3& p = cloud.positions[i];
      if (const auto cell = d.cell_of(p.x, p.y)) {
        double* dst = grid.cell(cell->first, cell->second);
        const double* src = cloud.feature_row(i);
        for (int k = 0; k < c; ++k) dst[k] += src[k];
      }
    }
  }
  return grid;
}

std::vector<double> unpool_grid_to_points(const FeatureGrid& grid, const PointCloud& cloud,
                                          const FloorplanDomain& domain) {
  const int c = grid.channels;
  const size_t n = cloud.size();
  if (cloud.has_features() && cloud.feature_channels != c)
    throw std::invalid_argument("unpool_grid_to_points: channel count mismatch");

  FloorplanDomain d = domain;
  d.resolution = grid.resolution;
  std::vector<double> out(n * static_cast<size_t>(c), 0.0);
  if (cloud.has_features()) out = cloud.features;

  // Each point only reads the grid and writes its own row; exact under
  // parallelism.
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    const Vec3& p = cloud.positions[i];
    if (const auto cell = d.cell_of(p.x, p.y)) {
      const double* src = grid.cell(cell->first, cell->second);
      double* dst = out.data() + i * c;
      for (int k = 0; k < c; ++k) dst[k] += src[k];
    }
  }
  return out;
}

PointCloud unproject_frame(const CameraFrame& frame) {
  if (!pose_is_rigid(frame.pose)) throw std::invalid_argument("unproject_frame: non-rigid pose");
  const size_t pixels = static_cast<size_t>(frame.width) * frame.height;
  if (frame.depth.size() != pixels)
    throw std::invalid_argument("unproject_frame: depth size mismatch");
  const int c = frame.feature_channels;
  if (c > 0 && frame.features.size() != pixels * static_cast<size_t>(c))
    throw std::invalid_argument("unproject_frame: feature size mismatch");

  // Slot per pixel, compacted afterwards: deterministic under parallelism.
  std::vector<uint8_t> valid(pixels, 0);
  std::vector<Vec3> world(pixels);

#pragma omp parallel for schedule(static)
  for (long long idx = 0; idx < static_cast<long long>(pixels); ++idx) {
    const double depth = frame.depth[idx];
    if (depth <= 0.0) continue;
    const int v = static_cast<int>(idx / frame.width);
    const int u = static_cast<int>(idx % frame.width);
    const double xc = (u - frame.intrinsics.cx) * depth / frame.intrinsics.fx;
    const double yc = (v - frame.intrinsics.cy) * depth / frame.intrinsics.fy;
    const double zc = depth;
    const auto& m = frame.pose;
    world[idx] = {m[0] * xc + m[1] * yc + m[2] * zc + m[3],
                  m[4] * xc + m[5] * yc + m[6] * zc + m[7],
                  m[8] * xc + m[9] * yc + m[10] * zc + m[11]};
    valid[idx] = 1;
  }

  PointCloud cloud;
  cloud.feature_channels = c;
  for (size_t idx = 0; idx < pixels; ++idx) {
    if (!valid[idx]) continue;
    cloud.positions.push_back(world[idx]);
    if (c > 0) {
      const double* row = frame.features.data() + idx * c;
      cloud.features.insert(cloud.features.end(), row, row + c);
    }
  }
  return cloud;
}

FeatureGrid pool_image_features(std::span<const CameraFrame> frames, const FloorplanDomain& domain,
                                int stride, int resolution) {
  if (frames.empty()) return FeatureGrid(resolution, 0);
  if (stride < 1) throw std::invalid_argument("pool_image_features: stride must be >= 1");

  const int c = frames[0].feature_channels;
  PointCloud merged;
  merged.feature_channels = c;
  for (size_t i = 0; i < frames.size(); i += static_cast<size_t>(stride)) {
    if (frames[i].feature_channels != c)
      throw std::invalid_argument("pool_image_features: frames disagree on channel count");
    PointCloud part = unproject_frame(frames[i]);
    merged.positions.insert(merged.positions.end(), part.positions.begin(), part.positions.end());
    merged.features.insert(merged.features.end(), part.features.begin(), part.features.end());
  }
  if (merged.empty()) return FeatureGrid(resolution, c);
  return pool_points_to_grid(merged, domain, resolution);
}

namespace {

void write_u32(std::ofstream& out, uint32_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

uint32_t read_u32(std::ifstream& in, const std::string& path) {
  uint32_t v = 0;
  if (!in.read(reinterpret_cast<char*>(&v), sizeof(v)))
    throw std::runtime_error("truncated file: " + path);
  return v;
}

void expect_magic(std::ifstream& in, const char* magic, const std::string& path) {
  char buf[4];
  if (!in.read(buf, 4) || std::memcmp(buf, magic, 4) != 0)
    throw std::runtime_error("bad magic in " + path + " (expected " + magic + ")");
}

std::string frame_prefix(const std::string& dir, int index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d", index);
  return dir + "/" + buf;
}

}  // namespace

void write_depth_raw(const std::string& path, int width, int height,
                     std::span<const double> depth) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write("FGD1", 4);
  write_u32(out, static_cast<uint32_t>(width));
  write_u32(out, static_cast<uint32_t>(height));
  for (double v : depth) {
    const float f = static_cast<float>(v);
    out.write(reinterpret_cast<const char*>(&f), sizeof(f));
  }
}

void write_feat_raw(const std::string& path, int width, int height, int channels,
                    std::span<const double> features) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write("FGF1", 4);
  write_u32(out, static_cast<uint32_t>(width));
  write_u32(out, static_cast<uint32_t>(height));
  write_u32(out, static_cast<uint32_t>(channels));
  for (double v : features) {
    const float f = static_cast<float>(v);
    out.write(reinterpret_cast<const char*>(&f), sizeof(f));
  }
}

void write_pose_txt(const std::string& path, const std::array<double, 16>& pose) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  char buf[64];
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", pose[r * 4 + c]);
      out << buf << (c == 3 ? "\n" : " ");
    }
  }
}

void write_intrinsics_txt(const std::string& path, const CameraIntrinsics& intrinsics) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g %.17g\n", intrinsics.fx, intrinsics.fy,
                intrinsics.cx, intrinsics.cy);
  out << buf;
}

void save_camera_frame(const CameraFrame& frame, const std::string& dir, int index) {
  const std::string prefix = frame_prefix(dir, index);
  write_depth_raw(prefix + ".depth.raw", frame.width, frame.height, frame.depth);
  write_feat_raw(prefix + ".feat.raw", frame.width, frame.height, frame.feature_channels,
                 frame.features);
  write_pose_txt(prefix + ".pose.txt", frame.pose);
  write_intrinsics_txt(dir + "/intrinsics.txt", frame.intrinsics);
}

CameraFrame load_camera_frame(const std::string& dir, int index) {
  const std::string prefix = frame_prefix(dir, index);
  CameraFrame frame;

  {
    const std::string path = prefix + ".depth.raw";
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    expect_magic(in, "FGD1", path);
    frame.width = static_cast<int>(read_u32(in, path));
    frame.height = static_cast<int>(read_u32(in, path));
    const size_t pixels = static_cast<size_t>(frame.width) * frame.height;
    frame.depth.resize(pixels);
    for (size_t i = 0; i < pixels; ++i) {
      float f = 0.0f;
      if (!in.read(reinterpret_cast<char*>(&f), sizeof(f)))
        throw std::runtime_error("truncated file: " + path);
      frame.depth[i] = f;
    }
  }
  {
    const std::string path = prefix + ".feat.raw";
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    expect_magic(in, "FGF1", path);
    const int w = static_cast<int>(read_u32(in, path));
    const int h = static_cast<int>(read_u32(in, path));
    if (w != frame.width || h != frame.height)
      throw std::runtime_error("feature/depth size mismatch in " + path);
    frame.feature_channels = static_cast<int>(read_u32(in, path));
    const size_t count = static_cast<size_t>(w) * h * frame.feature_channels;
    frame.features.resize(count);
    for (size_t i = 0; i < count; ++i) {
      float f = 0.0f;
      if (!in.read(reinterpret_cast<char*>(&f), sizeof(f)))
        throw std::runtime_error("truncated file: " + path);
      frame.features[i] = f;
    }
  }
  {
    const std::string path = prefix + ".pose.txt";
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    for (double& v : frame.pose) {
      if (!(in >> v)) throw std::runtime_error("malformed pose file: " + path);
    }
  }
  {
    const std::string path = dir + "/intrinsics.txt";
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    if (!(in >> frame.intrinsics.fx >> frame.intrinsics.fy >> frame.intrinsics.cx >>
          frame.intrinsics.cy))
      throw std::runtime_error("malformed intrinsics file: " + path);
  }
  return frame;
}

std::vector<CameraFrame> load_frame_set(const std::string& dir) {
  std::vector<CameraFrame> frames;
  for (int index = 0;; ++index) {
    const std::string probe = frame_prefix(dir, index) + ".depth.raw";
    if (!std::filesystem::exists(probe)) break;
    frames.push_back(load_camera_frame(dir, index));
  }
  return frames;
}

}  // namespace vecplan
