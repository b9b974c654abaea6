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
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "dogma/common/geometry.hpp"
#include "dogma/evidential/grid.hpp"
#include "dogma/io/egrid.hpp"
#include "dogma/measurement/point_cloud.hpp"
#include "dogma/sim/shapes.hpp"

namespace dogma::sim {

struct StaticShape {
  Vec2 min;
  Vec2 max;
};

struct AgentSpec {
  Vec2 size;      // full length along heading, full width across it
  Pose2 pose;     // initial
  Vec2 velocity;  // world frame, m/s
};

struct EgoSpec {
  Pose2 start;
  Vec2 velocity;
  /// When non-empty, one pose per frame; overrides start/velocity.
  std::vector<Pose2> poses;
};

struct SensorSpec {
  int beam_count = 720;
  double angular_span = 2.0 * 3.14159265358979323846;
  double max_range = 30.0;
  double range_noise_sigma = 0.02;
  double return_height = 1.0;  // z of obstacle returns
};

struct GroundPlaneSpec {
  bool enabled = false;
  double z_noise_sigma = 0.02;
  double tilt = 0.0;  // rad, about the sensor y axis
  int point_count = 1000;
  double radius = 20.0;
};

struct SceneConfig {
  std::string name;
  int frame_count = 60;
  double frame_rate = 10.0;
  std::uint64_t seed = 1;
  std::vector<StaticShape> static_shapes;
  std::vector<AgentSpec> agents;
  EgoSpec ego;
  SensorSpec sensor;
  GroundPlaneSpec ground_plane;

  double dt() const { return 1.0 / frame_rate; }
  /// Throws Error(kConfig) when any field is outside its domain.
  void validate() const;
};

/// Strict JSON schema: unknown keys are rejected.
SceneConfig parse_scene_config(std::string_view json_text, std::string_view source = "scene");
SceneConfig load_scene_config(const std::filesystem::path& path);

struct AgentState {
  Pose2 pose;
  Vec2 velocity;
  Vec2 size;
  OrientedBox box() const {
    return {pose.position, size * 0.5, pose.heading};
  }
};

struct SceneState {
  std::int64_t frame_index = 0;
  std::vector<AgentState> agents;
  Pose2 ego;
  Vec2 ego_velocity;
};

SceneState initial_state(const SceneConfig& cfg);

/// Advances every agent by velocity / frame_rate and moves the ego along its
/// trajectory.
SceneState step(const SceneState& state, const SceneConfig& cfg);

struct LabeledScan {
  PointCloud cloud;
  std::vector<std::uint8_t> ground;  // 1 = ground point, 0 = obstacle return
};

/// Simulated LiDAR scan from the ego pose. Points are in the sensor frame.
/// Deterministic in (cfg.seed, state.frame_index).
LabeledScan scan(const SceneState& state, const SceneConfig& cfg);

struct GroundTruth {
  GridSpec spec;
  Vec2 origin;
  std::vector<std::uint8_t> occupied;
  std::vector<Vec2> velocity;  // ego-relative
  /// -1: free, 0..agents-1: agent index, agents..: static shape index + agents
  std::vector<int> owner;

  bool is_agent(std::size_t cell, std::size_t agent_count) const {
    return owner[cell] >= 0 && static_cast<std::size_t>(owner[cell]) < agent_count;
  }
};

/// Cells intersecting any shape, with each cell's owner velocity relative to
/// the ego. Agents take precedence over static shapes. The grid is centered on
/// the ego position snapped to the lattice, matching raytrace().
GroundTruth ground_truth(const SceneState& state, const SceneConfig& cfg, const GridSpec& spec);

/// Three-channel tensor [occupancy, vx_rel, vy_rel].
io::GridTensor to_tensor(const GroundTruth& truth, std::int64_t frame_index, double timestamp);

struct GroundSceneParams {
  int ground_points = 1000;
  int obstacle_points = 200;
  double z_noise_sigma = 0.02;
  double tilt = 0.0;
  double radius = 20.0;
  Vec2 pillar_center{6.0, 3.0};
  Vec2 pillar_half{1.0, 1.0};
  double pillar_z_min = 0.5;
  double pillar_z_max = 2.0;
};

/// Flat (optionally tilted) ground disc plus a box pillar, labeled per point.
LabeledScan synthetic_ground_scene(const GroundSceneParams& params, std::uint64_t seed);

}  // namespace dogma::sim
