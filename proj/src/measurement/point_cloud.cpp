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

#include "dogma/measurement/point_cloud.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "dogma/common/error.hpp"

namespace dogma {

PointCloud parse_velodyne_bin(std::span<const std::byte> bytes) {
  if (bytes.size() % 16 != 0) {
    fail(ErrorCode::kTrailingBytes, "velodyne scan of " + std::to_string(bytes.size()) +
                                        " bytes is not a multiple of 16");
  }
  PointCloud cloud;
  cloud.points.resize(bytes.size() / 16);
  io::LeReader in(bytes);
  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    Point& p = cloud.points[i];
    p.x = in.get<float>();
    p.y = in.get<float>();
    p.z = in.get<float>();
    p.reflectance = in.get<float>();
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z) ||
        !std::isfinite(p.reflectance)) {
      fail(ErrorCode::kNonFinite, "non-finite value in point " + std::to_string(i));
    }
  }
  return cloud;
}

io::Bytes serialize_velodyne_bin(const PointCloud& cloud) {
  io::Bytes out;
  out.reserve(16 * cloud.points.size());
  for (const Point& p : cloud.points) {
    io::put_le(out, p.x);
    io::put_le(out, p.y);
    io::put_le(out, p.z);
    io::put_le(out, p.reflectance);
  }
  return out;
}

std::vector<PoseRecord> parse_pose_csv(std::string_view text) {
  std::vector<PoseRecord> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.starts_with("frame")) continue;
    PoseRecord r;
    long long frame = 0;
    double x = 0, y = 0, h = 0;
    char tail = 0;
    if (std::sscanf(line.c_str(), "%lld,%lf,%lf,%lf%c", &frame, &x, &y, &h, &tail) != 4 ||
        !std::isfinite(x) || !std::isfinite(y) || !std::isfinite(h)) {
      fail(ErrorCode::kFormat, "pose csv line " + std::to_string(line_no) +
                                   ": expected frame,x,y,heading");
    }
    r.frame = frame;
    r.pose = {{x, y}, h};
    out.push_back(r);
  }
  return out;
}

std::string format_pose_csv(std::span<const PoseRecord> poses) {
  std::string out = "frame,x,y,heading\n";
  char buf[128];
  for (const auto& r : poses) {
    std::snprintf(buf, sizeof buf, "%lld,%.17g,%.17g,%.17g\n",
                  static_cast<long long>(r.frame), r.pose.position.x,
                  r.pose.position.y, r.pose.heading);
    out += buf;
  }
  return out;
}

}  // namespace dogma
