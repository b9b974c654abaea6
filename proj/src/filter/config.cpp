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

#include "dogma/filter/config.hpp"

#include <cmath>

#include "dogma/common/error.hpp"

namespace dogma {

std::string_view to_string(DogmaMode mode) {
  return mode == DogmaMode::kDst ? "dst" : "prob";
}

DogmaMode parse_mode(std::string_view text) {
  if (text == "dst") return DogmaMode::kDst;
  if (text == "prob" || text == "probabilistic") return DogmaMode::kProbabilistic;
  fail(ErrorCode::kConfig, "mode must be 'dst' or 'prob', got '" + std::string(text) + "'");
}

std::string_view to_string(BirthPlacement p) {
  switch (p) {
    case BirthPlacement::kResidual: return "residual";
    case BirthPlacement::kOccupancy: return "occupancy";
    case BirthPlacement::kUniform: return "uniform";
  }
  return "residual";
}

int FilterConfig::birth_count() const {
  return static_cast<int>(std::lround(birth_fraction * particle_count));
}

void FilterConfig::validate() const {
  auto check = [](bool ok, const char* what) {
    if (!ok) fail(ErrorCode::kConfig, std::string("filter.") + what);
  };
  check(particle_count >= 1, "particle_count must be >= 1");
  check(sigma_v > 0, "sigma_v must be > 0");
  check(init_weight >= 0, "init_weight must be >= 0");
  check(p_survive >= 0 && p_survive <= 1, "p_survive must lie in [0, 1]");
  check(q_pos >= 0 && q_vel >= 0, "process noise must be >= 0");
  check(birth_fraction >= 0 && birth_fraction <= 1, "birth_fraction must lie in [0, 1]");
  check(birth_mass_fraction >= 0, "birth_mass_fraction must be >= 0");
  check(alpha >= 0 && alpha <= 1, "alpha must lie in [0, 1]");
  check(tau_threshold >= 0, "tau_threshold must be >= 0");
  check(epsilon_reg > 0, "epsilon_reg must be > 0");
  check(m_occ_min >= 0 && m_occ_min <= 1, "m_occ_min must lie in [0, 1]");
  check(v_max > 0, "v_max must be > 0");
  check(frame_rate > 0, "frame_rate must be > 0");
}

FilterConfig filter_config_from_json(const io::Json& j, const std::string& context,
                                     FilterConfig base) {
  io::StrictObject o(j, context);
  FilterConfig c = base;
  c.particle_count = o.get("particle_count", c.particle_count);
  c.sigma_v = o.get("sigma_v", c.sigma_v);
  c.init_weight = o.get("init_weight", c.init_weight);
  c.p_survive = o.get("p_survive", c.p_survive);
  c.q_pos = o.get("q_pos", c.q_pos);
  c.q_vel = o.get("q_vel", c.q_vel);
  c.birth_fraction = o.get("birth_fraction", c.birth_fraction);
  c.birth_mass_fraction = o.get("birth_mass_fraction", c.birth_mass_fraction);
  const auto placement = o.get<std::string>("birth_placement", std::string(to_string(c.birth_placement)));
  if (placement == "residual") {
    c.birth_placement = BirthPlacement::kResidual;
  } else if (placement == "occupancy") {
    c.birth_placement = BirthPlacement::kOccupancy;
  } else if (placement == "uniform") {
    c.birth_placement = BirthPlacement::kUniform;
  } else {
    fail(ErrorCode::kConfig, o.path("birth_placement") + ": expected 'residual', 'occupancy' or 'uniform'");
  }
  c.alpha = o.get("alpha", c.alpha);
  c.tau_threshold = o.get("tau_threshold", c.tau_threshold);
  c.epsilon_reg = o.get("epsilon_reg", c.epsilon_reg);
  c.m_occ_min = o.get("m_occ_min", c.m_occ_min);
  c.v_max = o.get("v_max", c.v_max);
  c.frame_rate = o.get("frame_rate", c.frame_rate);
  c.mode = parse_mode(o.get<std::string>("mode", std::string(to_string(c.mode))));
  c.seed = o.get("seed", c.seed);
  o.finish();
  c.validate();
  return c;
}

io::Json to_json(const FilterConfig& c) {
  return io::Json{{"particle_count", c.particle_count},
                  {"sigma_v", c.sigma_v},
                  {"init_weight", c.init_weight},
                  {"p_survive", c.p_survive},
                  {"q_pos", c.q_pos},
                  {"q_vel", c.q_vel},
                  {"birth_fraction", c.birth_fraction},
                  {"birth_mass_fraction", c.birth_mass_fraction},
                  {"birth_placement", std::string(to_string(c.birth_placement))},
                  {"alpha", c.alpha},
                  {"tau_threshold", c.tau_threshold},
                  {"epsilon_reg", c.epsilon_reg},
                  {"m_occ_min", c.m_occ_min},
                  {"v_max", c.v_max},
                  {"frame_rate", c.frame_rate},
                  {"mode", std::string(to_string(c.mode))},
                  {"seed", c.seed}};
}

}  // namespace dogma
