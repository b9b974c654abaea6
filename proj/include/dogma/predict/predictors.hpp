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
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dogma/filter/dogma_frame.hpp"
#include "dogma/filter/filter.hpp"

namespace dogma::predict {

/// One occupancy probability per cell, row-major.
struct OccupancyGrid {
  GridSpec spec;
  std::vector<double> values;
  friend bool operator==(const OccupancyGrid&, const OccupancyGrid&) = default;
};

OccupancyGrid occupancy_of(const DogmaFrame& frame);

/// Mean of squared differences over all cells. Throws kSpecMismatch.
double mse(const OccupancyGrid& pred, const OccupancyGrid& target);

/// Same, restricted to cells where mask != 0. Returns 0 for an empty mask.
double mse(const OccupancyGrid& pred, const OccupancyGrid& target,
           std::span<const std::uint8_t> mask);

/// `horizon` copies of the last grid.
std::vector<OccupancyGrid> static_predictor(const OccupancyGrid& last_seen, int horizon);

enum class StaticParticles { kFreeze, kDrop };

struct PfOptions {
  StaticParticles static_particles = StaticParticles::kFreeze;
  DogmaMode mode = DogmaMode::kDst;
};

/// Raw occupied mass min(1, sum w) per future step.
///
/// Particles in dynamic cells move with their own velocity (no noise);
/// particles elsewhere are frozen or dropped. The grid of step k is centered
/// at the snapshot origin advanced by k * dt * ego_velocity, snapped to the
/// lattice.
std::vector<std::vector<double>> propagate_mass(const FilterSnapshot& snap, int horizon,
                                                double dt, StaticParticles statics);

/// Occupancy forecasts from a filter snapshot. Probabilistic mode reports the
/// occupied mass directly. DST mode keeps the last free mass (capped at
/// 1 - m_occ) and reports the pignistic probability.
std::vector<OccupancyGrid> pf_predictor(const FilterSnapshot& snap, int horizon, double dt,
                                        const PfOptions& options = {});

inline constexpr int kSeedFrames = 5;
inline constexpr int kHorizon = 15;
inline constexpr int kSequenceLength = kSeedFrames + kHorizon;

/// Twenty consecutive frames. `snapshot` is the filter state after the last
/// seed frame and is only needed by the particle baseline. When `targets`
/// holds kHorizon grids they replace the occupancy of frames 6-20 as the
/// scoring reference (e.g. simulator ground truth).
struct Sequence {
  std::vector<DogmaFrame> frames;
  std::optional<FilterSnapshot> snapshot;
  std::vector<OccupancyGrid> targets;
  std::int64_t first_frame = 0;

  OccupancyGrid target(int step) const;  // step in 1..kHorizon
};

class Predictor {
 public:
  virtual ~Predictor() = default;
  virtual std::string id() const = 0;
  /// Forecasts for steps 1..horizon after the seed frames.
  virtual std::vector<OccupancyGrid> predict(const Sequence& seq, int horizon,
                                             double dt) const = 0;
};

class StaticPredictor final : public Predictor {
 public:
  std::string id() const override { return "static"; }
  std::vector<OccupancyGrid> predict(const Sequence& seq, int horizon,
                                     double dt) const override;
};

class PfPredictor final : public Predictor {
 public:
  explicit PfPredictor(StaticParticles statics = StaticParticles::kFreeze) : statics_(statics) {}
  std::string id() const override { return "pf"; }
  /// Throws kInvalidArgument when the sequence has no snapshot.
  std::vector<OccupancyGrid> predict(const Sequence& seq, int horizon,
                                     double dt) const override;

 private:
  StaticParticles statics_;
};

/// "static" or "pf"; anything else throws kConfig.
std::unique_ptr<Predictor> make_predictor(const std::string& id);

}  // namespace dogma::predict
