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

#include "dogma/sim/shapes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace dogma::sim {

std::optional<double> ray_hit(const OrientedBox& box, Vec2 origin, Vec2 direction) {
  const Vec2 o = rotate(origin - box.center, -box.heading);
  const Vec2 d = rotate(direction, -box.heading);
  double t_near = -std::numeric_limits<double>::infinity();
  double t_far = std::numeric_limits<double>::infinity();
  const double os[2] = {o.x, o.y};
  const double ds[2] = {d.x, d.y};
  const double hs[2] = {box.half_extent.x, box.half_extent.y};
  for (int axis = 0; axis < 2; ++axis) {
    if (std::abs(ds[axis]) < 1e-15) {
      if (std::abs(os[axis]) > hs[axis]) return std::nullopt;
      continue;
    }
    double t0 = (-hs[axis] - os[axis]) / ds[axis];
    double t1 = (hs[axis] - os[axis]) / ds[axis];
    if (t0 > t1) std::swap(t0, t1);
    t_near = std::max(t_near, t0);
    t_far = std::min(t_far, t1);
  }
  if (t_near > t_far || t_near < 0.0) return std::nullopt;
  return t_near;
}

bool overlaps(const OrientedBox& box, Vec2 lo, Vec2 hi) {
  const Vec2 ax = rotate({1.0, 0.0}, box.heading);
  const Vec2 ay = rotate({0.0, 1.0}, box.heading);
  const std::array<Vec2, 4> box_corners = {
      box.center + ax * box.half_extent.x + ay * box.half_extent.y,
      box.center + ax * box.half_extent.x - ay * box.half_extent.y,
      box.center - ax * box.half_extent.x + ay * box.half_extent.y,
      box.center - ax * box.half_extent.x - ay * box.half_extent.y};
  const std::array<Vec2, 4> rect_corners = {Vec2{lo.x, lo.y}, Vec2{lo.x, hi.y},
                                            Vec2{hi.x, lo.y}, Vec2{hi.x, hi.y}};
  const std::array<Vec2, 4> axes = {Vec2{1, 0}, Vec2{0, 1}, ax, ay};
  for (const Vec2& axis : axes) {
    double a_min = std::numeric_limits<double>::infinity(), a_max = -a_min;
    double b_min = a_min, b_max = -a_min;
    for (const Vec2& c : box_corners) {
      a_min = std::min(a_min, dot(c, axis));
      a_max = std::max(a_max, dot(c, axis));
    }
    for (const Vec2& c : rect_corners) {
      b_min = std::min(b_min, dot(c, axis));
      b_max = std::max(b_max, dot(c, axis));
    }
    if (a_max <= b_min || b_max <= a_min) return false;
  }
  return true;
}

double boundary_distance(const OrientedBox& box, Vec2 p) {
  const Vec2 q = rotate(p - box.center, -box.heading);
  const double dx = std::abs(q.x) - box.half_extent.x;
  const double dy = std::abs(q.y) - box.half_extent.y;
  if (dx <= 0 && dy <= 0) return std::min(-dx, -dy);
  return std::hypot(std::max(dx, 0.0), std::max(dy, 0.0));
}

}  // namespace dogma::sim
