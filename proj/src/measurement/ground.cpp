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

#include "dogma/measurement/ground.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "dogma/common/error.hpp"

namespace dogma {
namespace {

std::size_t count_inliers(const std::vector<Point>& pts, const Plane& plane, double thr) {
  std::size_t n = 0;
  for (const Point& p : pts) n += std::abs(plane.distance(p)) <= thr ? 1 : 0;
  return n;
}

std::size_t count_below(const std::vector<Point>& pts, const Plane& plane, double thr) {
  std::size_t n = 0;
  for (const Point& p : pts) n += plane.distance(p) < -thr ? 1 : 0;
  return n;
}

bool oriented_within_tilt(Eigen::Vector3d n, double max_tilt, Plane& out, double d_at) {
  const double len = n.norm();
  if (!(len > 1e-12)) return false;
  n /= len;
  if (n.z() < 0) n = -n;
  if (std::acos(std::min(1.0, n.z())) > max_tilt) return false;
  out = {n.x(), n.y(), n.z(), d_at};
  return true;
}

// Total least squares: the normal is the eigenvector of the inlier scatter
// matrix with the smallest eigenvalue.
bool refine(const std::vector<Point>& pts, const Plane& seed, double thr,
            double max_tilt, Plane& out) {
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  std::size_t n = 0;
  for (const Point& p : pts) {
    if (std::abs(seed.distance(p)) > thr) continue;
    mean += Eigen::Vector3d(p.x, p.y, p.z);
    ++n;
  }
  if (n < 3) return false;
  mean /= static_cast<double>(n);
  Eigen::Matrix3d scatter = Eigen::Matrix3d::Zero();
  for (const Point& p : pts) {
    if (std::abs(seed.distance(p)) > thr) continue;
    const Eigen::Vector3d q = Eigen::Vector3d(p.x, p.y, p.z) - mean;
    scatter += q * q.transpose();
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(scatter);
  Plane candidate;
  if (!oriented_within_tilt(eig.eigenvectors().col(0), max_tilt, candidate, 0.0)) {
    return false;
  }
  candidate.d = -(candidate.nx * mean.x() + candidate.ny * mean.y() + candidate.nz * mean.z());
  out = candidate;
  return true;
}

}  // namespace

GroundSegmentation segment_ground(const PointCloud& cloud, const RansacParams& params,
                                  std::uint64_t seed) {
  if (!(params.inlier_threshold > 0.0)) {
    fail(ErrorCode::kInvalidArgument, "inlier_threshold must be positive");
  }
  GroundSegmentation result;
  result.cloud = cloud;
  result.is_ground.assign(cloud.points.size(), false);
  const auto& pts = cloud.points;
  if (pts.size() < 3) return result;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
  const double max_below = params.max_below_fraction * static_cast<double>(pts.size());
  Plane best;
  std::size_t best_count = 0;
  for (int it = 0; it < params.iterations; ++it) {
    const std::size_t i = pick(rng), j = pick(rng), k = pick(rng);
    if (i == j || j == k || i == k) continue;
    const Eigen::Vector3d a(pts[i].x, pts[i].y, pts[i].z);
    const Eigen::Vector3d b(pts[j].x, pts[j].y, pts[j].z);
    const Eigen::Vector3d c(pts[k].x, pts[k].y, pts[k].z);
    Plane candidate;
    if (!oriented_within_tilt((b - a).cross(c - a), params.max_tilt, candidate, 0.0)) {
      continue;
    }
    candidate.d = -(candidate.nx * a.x() + candidate.ny * a.y() + candidate.nz * a.z());
    const std::size_t count = count_inliers(pts, candidate, params.inlier_threshold);
    if (count > best_count &&
        static_cast<double>(count_below(pts, candidate, params.inlier_threshold)) <=
            max_below) {
      best_count = count;
      best = candidate;
    }
  }
  const double needed = params.min_inlier_fraction * static_cast<double>(pts.size());
  if (best_count == 0 || static_cast<double>(best_count) < needed) return result;

  for (int pass = 0; pass < 2; ++pass) {
    Plane refined;
    if (!refine(pts, best, params.inlier_threshold, params.max_tilt, refined)) break;
    if (count_inliers(pts, refined, params.inlier_threshold) < best_count) break;
    if (static_cast<double>(count_below(pts, refined, params.inlier_threshold)) > max_below) {
      break;
    }
    best = refined;
    best_count = count_inliers(pts, best, params.inlier_threshold);
  }

  result.ground_found = true;
  result.plane = best;
  result.cloud.points.clear();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const bool ground = std::abs(best.distance(pts[i])) <= params.inlier_threshold;
    result.is_ground[i] = ground;
    if (!ground) result.cloud.points.push_back(pts[i]);
  }
  return result;
}

}  // namespace dogma
