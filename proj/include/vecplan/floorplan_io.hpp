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

#include "vecplan/floorplan.hpp"

namespace vecplan {

// Raised by load() with the JSON path of the offending element, e.g.
// "$.walls[2].a".
class PlanIoError : public std::runtime_error {
 public:
  PlanIoError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// UTF-8 JSON document (schema version 1). save() requires a plan that passes
// validate(); load() accepts arbitrary bytes and reports schema problems
// with their path.
std::string save(const Floorplan& plan);
Floorplan load(const std::string& bytes);

void save_file(const Floorplan& plan, const std::string& path);
Floorplan load_file(const std::string& path);

}  // namespace vecplan
