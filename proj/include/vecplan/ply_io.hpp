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

#include <stdexcept>
#include <string>

#include "vecplan/point_cloud.hpp"

namespace vecplan {

// Raised on malformed input; carries the 1-based line number.
class PointCloudParseError : public std::runtime_error {
 public:
  PointCloudParseError(size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  size_t line() const { return line_; }

 private:
  size_t line_;
};

// Parses an ASCII PLY subset (element vertex with x,y,z float32/float64 and
// optional red,green,blue uchar) or a plain "x y z [r g b]" text file.
// The format is auto-detected by the "ply" header magic.
PointCloud parse_point_file(const std::string& bytes);
PointCloud load_point_file(const std::string& path);

std::string to_ply(const PointCloud& cloud);
void save_ply(const PointCloud& cloud, const std::string& path);

}  // namespace vecplan
