// Copyright 2026 The dogma Authors
//
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

#include <optional>

#include "dogma/common/geometry.hpp"

namespace dogma::sim {

/// Rectangle with arbitrary heading. Static scenery uses heading 0.
struct OrientedBox {
  Vec2 center;
  Vec2 half_extent;
  double heading = 0.0;
};

/// Distance along a unit ray to the first boundary crossing, or nullopt when
/// the ray misses or starts inside the box.
std::optional<double> ray_hit(const OrientedBox& box, Vec2 origin, Vec2 direction);

/// True when the box and the axis-aligned rectangle [lo, hi] overlap with
/// positive area (touching edges do not count).
bool overlaps(const OrientedBox& box, Vec2 lo, Vec2 hi);

/// Distance from p to the box outline.
double boundary_distance(const OrientedBox& box, Vec2 p);

}  // namespace dogma::sim
