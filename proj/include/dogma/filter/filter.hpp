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
#include <optional>
#include <span>
#include <vector>

#include "dogma/filter/config.hpp"
#include "dogma/filter/dogma_frame.hpp"
#include "dogma/filter/particles.hpp"

namespace dogma {

/// State needed to roll the particle baseline forward from one frame.
struct FilterSnapshot {
  ParticleSet particles;  // persistent particles, weights matched to the posterior
  EvidentialGrid posterior;
  std::vector<std::uint8_t> dynamic_mask;
  Vec2 ego_velocity;
};

struct FilterStep {
  DogmaFrame dogma;
  FilterSnapshot snapshot;
  std::vector<CellStats> stats;
};

/// Sequential grid particle filter.
///
/// Per frame: recenter the prior onto the measurement origin, predict the
/// particles, update occupancy, normalize, compute cell statistics on the
/// persistent particles, gate, build the frame, add newborn particles and
/// resample back to the configured particle count. The first frame initializes the
/// particles around the measurement origin instead of predicting.
class GridFilter {
 public:
  explicit GridFilter(FilterConfig config);

  FilterStep step(const EvidentialGrid& measurement, Vec2 ego_velocity);

  const FilterConfig& config() const { return config_; }
  const ParticleSet& particles() const { return particles_; }
  const std::optional<EvidentialGrid>& posterior() const { return posterior_; }
  std::int64_t frames_processed() const { return frames_; }

 private:
  FilterConfig config_;
  ParticleSet particles_;
  std::optional<EvidentialGrid> posterior_;
  std::int64_t frames_ = 0;
};

/// Ego velocity per frame from consecutive poses (forward difference for the
/// first frame, backward for the rest).
std::vector<Vec2> ego_velocities(std::span<const Pose2> poses, double dt);

/// Runs the filter over a measurement sequence. Throws kEmptySequence on no
/// frames and kInvalidArgument when the pose count differs.
std::vector<FilterStep> run_filter(std::span<const EvidentialGrid> frames,
                                   std::span<const Pose2> poses, const FilterConfig& config);

}  // namespace dogma
