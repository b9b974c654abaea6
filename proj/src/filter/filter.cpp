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

#include "dogma/filter/filter.hpp"

#include <utility>

namespace dogma {

GridFilter::GridFilter(FilterConfig config) : config_(std::move(config)) {
  config_.validate();
}

FilterStep GridFilter::step(const EvidentialGrid& measurement, Vec2 ego_velocity) {
  const FilterConfig& c = config_;
  const GridSpec& spec = measurement.spec;
  EvidentialGrid prior;
  if (!posterior_) {
    particles_ = init_particles(spec, measurement.origin, c.particle_count, c.sigma_v,
                                c.init_weight, c.seed);
    prior = vacuous_grid(spec, measurement.origin);
  } else {
    require_same_spec(posterior_->spec, spec, "filter step");
    prior = recenter(*posterior_, measurement.origin);
    particles_ = predict_particles(std::move(particles_), spec, measurement.origin, c.dt(),
                                   c.q_pos, c.q_vel, c.p_survive);
  }

  OccupancyUpdate upd = update_occupancy(std::move(particles_), measurement, prior, c.alpha);
  EvidentialGrid posterior = std::move(upd.posterior);
  posterior.frame_index = measurement.frame_index;

  ParticleSet persistent;
  bool any_weight = false;
  for (const auto& p : upd.particles.particles) any_weight = any_weight || p.weight > 0.0;
  if (any_weight) {
    persistent = normalize_weights(std::move(upd.particles), posterior);
  } else {
    persistent = std::move(upd.particles);  // births repopulate the set below
  }

  // Newborns only carry the velocity prior, so the estimate comes from the
  // persistent particles alone.
  FilterStep out;
  out.stats = cell_stats(persistent, posterior, ego_velocity);
  auto mask = mahalanobis_gate(out.stats, c.tau_threshold, c.epsilon_reg);
  out.dogma = build_dogma(posterior, out.stats, mask, c.v_max, c.m_occ_min, c.mode);
  out.snapshot.particles = persistent;

  ParticleSet pool = birth_particles(std::move(persistent), posterior, c.birth_count(),
                                     c.sigma_v, c.birth_placement, c.birth_mass_fraction);

  if (pool.total_weight() > 0.0) {
    particles_ = resample(std::move(pool), c.particle_count);
  } else {
    // Nothing occupied anywhere: start over from the broad prior.
    particles_ = init_particles(spec, measurement.origin, c.particle_count, c.sigma_v,
                                c.init_weight, pool.rng());
  }

  out.snapshot.posterior = posterior;
  out.snapshot.dynamic_mask = std::move(mask);
  out.snapshot.ego_velocity = ego_velocity;
  posterior_ = std::move(posterior);
  ++frames_;
  return out;
}

std::vector<Vec2> ego_velocities(std::span<const Pose2> poses, double dt) {
  std::vector<Vec2> out(poses.size());
  if (poses.size() < 2) return out;
  for (std::size_t k = 1; k < poses.size(); ++k) {
    out[k] = (poses[k].position - poses[k - 1].position) * (1.0 / dt);
  }
  out[0] = out[1];
  return out;
}

std::vector<FilterStep> run_filter(std::span<const EvidentialGrid> frames,
                                   std::span<const Pose2> poses, const FilterConfig& config) {
  if (frames.empty()) fail(ErrorCode::kEmptySequence, "run_filter: no frames");
  if (poses.size() != frames.size()) {
    fail(ErrorCode::kInvalidArgument, "run_filter: " + std::to_string(poses.size()) +
                                          " poses for " + std::to_string(frames.size()) +
                                          " frames");
  }
  const auto velocities = ego_velocities(poses, config.dt());
  GridFilter filter(config);
  std::vector<FilterStep> out;
  out.reserve(frames.size());
  for (std::size_t k = 0; k < frames.size(); ++k) {
    try {
      out.push_back(filter.step(frames[k], velocities[k]));
    } catch (const Error& e) {
      throw Error(e.code(), "frame " + std::to_string(k) + ": " + e.message(), e.cell());
    }
  }
  return out;
}

}  // namespace dogma
