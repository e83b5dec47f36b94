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

#include "vecplan/floorplan.hpp"

namespace vecplan {

// Deterministic SVG rendering: rooms filled by a fixed per-type color table,
// walls as strokes, openings as double-line glyphs, icons as labeled
// rectangles. Identical plans yield byte-identical documents.
// Requires validate(plan) to be empty.
std::string render_svg(const Floorplan& plan);

const char* room_fill_color(RoomKind kind);

}  // namespace vecplan
