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
#include <random>
#include <span>
#include <vector>

#include "dogma/evidential/grid.hpp"
#include "dogma/filter/config.hpp"
#include "dogma/io/binary.hpp"

namespace dogma {

/// Position and velocity live in the world frame.
struct Particle {
  Vec2 position;
  Vec2 velocity;
  double weight = 0.0;
  friend bool operator==(const Particle&, const Particle&) = default;
};

struct ParticleSet {
  std::vector<Particle> particles;
  std::mt19937_64 rng;

  std::size_t size() const { return particles.size(); }
  double total_weight() const;
};

/// Flat cell index of a world position in a grid centered at `origin`.
std::optional<std::size_t> cell_of(const GridSpec& spec, Vec2 origin, Vec2 world);

/// Per-cell sums of particle weights.
std::vector<double> cell_weight_sums(const ParticleSet& ps, const GridSpec& spec, Vec2 origin);

/// Uniform positions over the grid extent, N(0, sigma_v^2) velocities per
/// axis, every weight equal to init_weight.
ParticleSet init_particles(const GridSpec& spec, Vec2 origin, int count, double sigma_v,
                           double init_weight, std::uint64_t seed);

/// Constant-velocity motion with Gaussian position and velocity noise;
/// weights decay by p_survive and particles that leave the grid drop to 0.
ParticleSet predict_particles(ParticleSet ps, const GridSpec& spec, Vec2 origin, double dt,
                              double q_pos, double q_vel, double p_survive);

struct OccupancyUpdate {
  ParticleSet particles;
  EvidentialGrid posterior;
  std::vector<double> predicted_mass;  // min(1, sum of weights) per cell
};

/// Occupancy update of the particle-based prediction against a measurement.
///
/// The predicted cell is {O: min(1, sum w), F: min(prior free, 1 - O)}; it is
/// discounted by alpha and combined with the measurement cell. Particle
/// weights in each cell with predicted mass are rescaled so they sum to the
/// posterior occupied mass.
OccupancyUpdate update_occupancy(ParticleSet ps, const EvidentialGrid& measurement,
                                 const EvidentialGrid& prior, double alpha);

/// Checks and enforces that per-cell weight sums equal the posterior occupied
/// mass (within 1e-9). Cells without weight are left alone. Throws
/// kDegenerateWeights when every weight is zero.
ParticleSet normalize_weights(ParticleSet ps, const EvidentialGrid& posterior);

/// Appends n_birth newborn particles. Positions are drawn per cell in
/// proportion to the posterior occupied mass (or uniformly), velocities from
/// N(0, sigma_v^2); each newborn weighs mass_fraction * sum(m_occ) / n_birth.
ParticleSet birth_particles(ParticleSet ps, const EvidentialGrid& posterior, int n_birth,
                            double sigma_v, BirthPlacement placement,
                            double mass_fraction = 0.1);

/// Systematic resampling of exactly `count` particles; every output weight is
/// total / count. `offset` in [0, 1) fixes the comb position; when absent it
/// is drawn from the set's generator. Throws kDegenerateWeights on zero total.
ParticleSet resample(ParticleSet pool, int count, std::optional<double> offset = std::nullopt);

/// Little-endian f32 quintuples (x, y, vx, vy, w).
io::Bytes encode_particles(const ParticleSet& ps);
ParticleSet decode_particles(std::span<const std::byte> data);

}  // namespace dogma
