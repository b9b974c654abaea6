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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dogma/common/geometry.hpp"
#include "dogma/io/binary.hpp"

namespace dogma {

/// One LiDAR return in the sensor frame.
struct Point {
  float x = 0.0F;
  float y = 0.0F;
  float z = 0.0F;
  float reflectance = 0.0F;
  friend bool operator==(const Point&, const Point&) = default;
};

struct PointCloud {
  std::vector<Point> points;
  Pose2 sensor_pose;
  std::int64_t frame_index = 0;
};

/// Decodes a KITTI Velodyne scan: consecutive little-endian f32 quadruples
/// (x, y, z, reflectance). Throws kTrailingBytes when the size is not a
/// multiple of 16 and kNonFinite on NaN/Inf values.
PointCloud parse_velodyne_bin(std::span<const std::byte> bytes);

io::Bytes serialize_velodyne_bin(const PointCloud& cloud);

struct PoseRecord {
  std::int64_t frame = 0;
  Pose2 pose;
};

/// Pose CSV with header "frame,x,y,heading" (meters, radians).
std::vector<PoseRecord> parse_pose_csv(std::string_view text);
std::string format_pose_csv(std::span<const PoseRecord> poses);

}  // namespace dogma
