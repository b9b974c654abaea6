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

#include <cstdint>
#include <numbers>
#include <vector>

#include "dogma/measurement/point_cloud.hpp"

namespace dogma {

struct RansacParams {
  int iterations = 200;
  double inlier_threshold = 0.15;          // m
  double max_tilt = 15.0 * std::numbers::pi / 180.0;  // rad from horizontal
  double min_inlier_fraction = 0.10;
  /// Ground is the lowest surface: candidates with more than this fraction of
  /// all points further than inlier_threshold below them are rejected.
  double max_below_fraction = 0.05;
};

/// Plane n.p + d = 0 with unit normal oriented upwards (n.z >= 0).
struct Plane {
  double nx = 0.0, ny = 0.0, nz = 1.0, d = 0.0;
  double distance(const Point& p) const { return nx * p.x + ny * p.y + nz * p.z + d; }
};

struct GroundSegmentation {
  PointCloud cloud;              // input minus ground inliers
  std::vector<bool> is_ground;   // per input point
  bool ground_found = false;     // false: NoGroundFound, cloud is the input
  Plane plane;
};

/// RANSAC ground-plane removal. Candidate planes from random 3-point samples
/// that tilt more than max_tilt, or that have too many points underneath,
/// are rejected; the best candidate is refined
/// by a least-squares fit to its inliers before points are removed.
GroundSegmentation segment_ground(const PointCloud& cloud, const RansacParams& params,
                                  std::uint64_t seed);

}  // namespace dogma
