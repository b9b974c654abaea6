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
#include <string>
#include <string_view>

#include "dogma/io/json_util.hpp"

namespace dogma {

enum class DogmaMode {
  kProbabilistic,  // [betP_occ, vx, vy]
  kDst,            // [m_occ, m_free, vx, vy]
};

/// kResidual: posterior m_occ not yet carried by persistent particles
/// (falls back to kOccupancy when every occupied cell is covered).
/// kOccupancy: posterior m_occ. kUniform: every cell alike.
enum class BirthPlacement { kResidual, kOccupancy, kUniform };

std::string_view to_string(DogmaMode mode);
DogmaMode parse_mode(std::string_view text);
std::string_view to_string(BirthPlacement p);

/// Constants of the grid particle filter. None of these values come with the
/// filter itself; they are tuning knobs.
struct FilterConfig {
  int particle_count = 20000;
  double sigma_v = 4.0;           // m/s, std of initial and newborn velocities
  double init_weight = 0.01;
  double p_survive = 0.95;
  double q_pos = 0.05;            // m per step
  double q_vel = 0.1;             // m/s per step
  double birth_fraction = 0.1;    // newborn particles per step, fraction of particle_count
  double birth_mass_fraction = 0.1;  // newborn total weight, fraction of total occupied mass
  BirthPlacement birth_placement = BirthPlacement::kResidual;
  double alpha = 0.9;             // information aging per frame
  double tau_threshold = 5.991;   // chi-square 95%, 2 dof
  double epsilon_reg = 0.01;      // (m/s)^2
  double m_occ_min = 0.1;
  double v_max = 20.0;            // m/s, velocity channel normalization
  double frame_rate = 10.0;       // Hz
  DogmaMode mode = DogmaMode::kDst;
  std::uint64_t seed = 42;

  int birth_count() const;
  double dt() const { return 1.0 / frame_rate; }

  /// Throws Error(kConfig) on any out-of-domain field.
  void validate() const;
};

/// Reads a FilterConfig object; every key is optional and unknown keys are
/// rejected. Missing keys keep `base` values.
FilterConfig filter_config_from_json(const io::Json& j, const std::string& context,
                                     FilterConfig base = {});
io::Json to_json(const FilterConfig& cfg);

}  // namespace dogma
