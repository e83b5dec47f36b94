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
#include <span>
#include <string>
#include <vector>

#include "vecplan/point_cloud.hpp"

namespace vecplan {

// Top-down C-channel feature map over the floorplan grid.
struct FeatureGrid {
  int resolution = kGridResolution;
  int channels = 0;
  std::vector<double> data;  // (i, j, c) row-major

  FeatureGrid() = default;
  FeatureGrid(int res, int c)
      : resolution(res), channels(c),
        data(static_cast<size_t>(res) * res * c, 0.0) {}

  double* cell(int i, int j) {
    return data.data() + (static_cast<size_t>(i) * resolution + j) * channels;
  }
  const double* cell(int i, int j) const {
    return data.data() + (static_cast<size_t>(i) * resolution + j) * channels;
  }
};

struct CameraIntrinsics {
  double fx = 1.0, fy = 1.0, cx = 0.0, cy = 0.0;
};

// One RGBD video frame: depth, per-pixel features, pose, intrinsics.
struct CameraFrame {
  CameraIntrinsics intrinsics;
  std::array<double, 16> pose{1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1};  // camera-to-world, row-major
  int width = 0;
  int height = 0;
  std::vector<double> depth;     // meters, 0 = invalid
  std::vector<double> features;  // (v, u, c) row-major
  int feature_channels = 0;
};

// Returns true when the pose's rotation block is orthonormal with det +1.
bool pose_is_rigid(const std::array<double, 16>& pose, double tol = 1e-6);

// Sum of point feature vectors per grid cell (out-of-domain points dropped).
// Linear in the point count. Throws when the cloud carries no features.
FeatureGrid pool_points_to_grid(const PointCloud& cloud, const FloorplanDomain& domain,
                                int resolution = kGridResolution);

// Adds each in-domain point's cell vector into its feature vector (assigns
// when the cloud has no features); out-of-domain points contribute zeros.
// Returns row-major N x C.
std::vector<double> unpool_grid_to_points(const FeatureGrid& grid, const PointCloud& cloud,
                                          const FloorplanDomain& domain);

// Pinhole unprojection of all valid-depth pixels into a world-space cloud
// carrying the per-pixel features. Throws on a non-rigid pose.
PointCloud unproject_frame(const CameraFrame& frame);

// pool_points_to_grid over the union of unproject_frame for frames at
// indices 0, stride, 2*stride, ... An empty frame list yields a zero grid.
FeatureGrid pool_image_features(std::span<const CameraFrame> frames, const FloorplanDomain& domain,
                                int stride = 10, int resolution = kGridResolution);

// Frame file set: NNNN.depth.raw ("FGD1", u32 w, u32 h, f32 row-major),
// NNNN.pose.txt (4x4 row-major world-from-camera), NNNN.feat.raw ("FGF1",
// u32 w, u32 h, u32 C, f32 data) and one shared intrinsics.txt (fx fy cx cy).
void write_depth_raw(const std::string& path, int width, int height,
                     std::span<const double> depth);
void write_feat_raw(const std::string& path, int width, int height, int channels,
                    std::span<const double> features);
void write_pose_txt(const std::string& path, const std::array<double, 16>& pose);
void write_intrinsics_txt(const std::string& path, const CameraIntrinsics& intrinsics);
void save_camera_frame(const CameraFrame& frame, const std::string& dir, int index);

CameraFrame load_camera_frame(const std::string& dir, int index);
std::vector<CameraFrame> load_frame_set(const std::string& dir);

}  // namespace vecplan
