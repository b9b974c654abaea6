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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dogma/evidential/grid.hpp"
#include "dogma/filter/config.hpp"
#include "dogma/io/json_util.hpp"
#include "dogma/measurement/ground.hpp"
#include "dogma/measurement/point_cloud.hpp"
#include "dogma/sim/scene.hpp"

namespace dogma::cli {

struct MeasurementParams {
  double m_occ = 0.6;
  double m_free = 0.6;
};

struct GroundParams {
  bool enabled = true;
  RansacParams ransac;
};

/// Every knob of one pipeline run. JSON keys (all optional, unknown keys
/// rejected):
///
///   grid        {cells_per_side, side_length}
///   measurement {m_occ, m_free}
///   ground      {enabled, iterations, inlier_threshold, max_tilt_deg,
///                min_inlier_fraction, max_below_fraction}
///   filter      FilterConfig fields
///   alpha, mode, seed   shorthands for the same filter fields
///   paths       {frames, out}
struct PipelineConfig {
  GridSpec grid;
  MeasurementParams measurement;
  GroundParams ground;
  FilterConfig filter;
  std::string frames_dir;
  std::string out_dir;

  void validate() const;
};

PipelineConfig parse_pipeline_config(std::string_view text, std::string_view source);
PipelineConfig load_pipeline_config(const std::filesystem::path& path);
io::Json to_json(const PipelineConfig& cfg);

/// SHA-256 hex digest of the canonical JSON form.
std::string config_hash(const PipelineConfig& cfg);

/// Ground removal (when enabled), ray tracing and mass assignment of one
/// scan. The grid origin is the sensor position snapped to the lattice.
EvidentialGrid measure(const PointCloud& cloud, const PipelineConfig& cfg);

/// One simulated frame with its oracle data.
struct SimFrame {
  sim::SceneState state;
  sim::LabeledScan scan;
  sim::GroundTruth truth;
};

/// Runs the scene for `frames` frames (scene frame_count when negative).
std::vector<SimFrame> simulate(const sim::SceneConfig& scene, const GridSpec& grid,
                               int frames = -1);

}  // namespace dogma::cli
