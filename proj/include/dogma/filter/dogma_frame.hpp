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
#include <vector>

#include "dogma/evidential/grid.hpp"
#include "dogma/filter/config.hpp"
#include "dogma/filter/particles.hpp"
#include "dogma/io/egrid.hpp"

namespace dogma {

/// Weighted velocity moments of the particles in one cell. `mean` is relative
/// to the ego; the covariance is the weighted population covariance.
struct CellStats {
  Vec2 mean;
  double pxx = 0.0, pxy = 0.0, pyy = 0.0;
  double m_occ = 0.0;
  int count = 0;
  bool valid = false;  // at least two particles with positive total weight
};

std::vector<CellStats> cell_stats(const ParticleSet& ps, const EvidentialGrid& posterior,
                                  Vec2 ego_velocity);

/// v^T (P + eps I)^-1 v.
double mahalanobis(const CellStats& s, double epsilon_reg);

/// 1 where the cell is stat-valid and its distance exceeds tau.
std::vector<std::uint8_t> mahalanobis_gate(std::span<const CellStats> stats, double tau,
                                           double epsilon_reg);

/// Channel-major frame. Probabilistic: [betP_occ, vx, vy]. DST: [m_occ,
/// m_free, vx, vy]. Velocities are ego-relative, divided by v_max and clamped
/// to [-1, 1].
struct DogmaFrame {
  GridSpec spec;
  DogmaMode mode = DogmaMode::kDst;
  std::int64_t frame_index = 0;
  double timestamp = 0.0;
  Vec2 origin;
  std::vector<double> data;

  int channels() const { return mode == DogmaMode::kDst ? 4 : 3; }
  std::span<const double> channel(int c) const {
    return std::span(data).subspan(c * spec.cell_count(), spec.cell_count());
  }
  std::span<double> channel(int c) {
    return std::span(data).subspan(c * spec.cell_count(), spec.cell_count());
  }
  /// betP of the occupied hypothesis per cell, for either mode.
  std::vector<double> occupancy_probability() const;
};

DogmaFrame build_dogma(const EvidentialGrid& posterior, std::span<const CellStats> stats,
                       std::span<const std::uint8_t> mask, double v_max, double m_occ_min,
                       DogmaMode mode);

io::GridTensor to_tensor(const DogmaFrame& frame);

/// Reads a 3- or 4-channel tensor back; the mode follows the channel count.
DogmaFrame dogma_from_tensor(const io::GridTensor& t, const GridSpec& spec);

}  // namespace dogma
