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

#include "dogma/filter/particles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dogma/simd/kernels.hpp"

namespace dogma {

double ParticleSet::total_weight() const {
  double w = 0.0;
  for (const auto& p : particles) w += p.weight;
  return w;
}

std::optional<std::size_t> cell_of(const GridSpec& spec, Vec2 origin, Vec2 world) {
  const auto cell = spec.locate(world - origin);
  if (!cell) return std::nullopt;
  return spec.flat(cell->row, cell->col);
}

std::vector<double> cell_weight_sums(const ParticleSet& ps, const GridSpec& spec, Vec2 origin) {
  std::vector<double> sums(spec.cell_count(), 0.0);
  for (const auto& p : ps.particles) {
    if (const auto c = cell_of(spec, origin, p.position)) sums[*c] += p.weight;
  }
  return sums;
}

ParticleSet init_particles(const GridSpec& spec, Vec2 origin, int count, double sigma_v,
                           double init_weight, std::uint64_t seed) {
  if (count < 1) fail(ErrorCode::kInvalidArgument, "particle count must be >= 1");
  if (!(sigma_v > 0)) fail(ErrorCode::kInvalidArgument, "sigma_v must be > 0");
  spec.validate();
  ParticleSet ps;
  ps.rng.seed(seed);
  const double cs = spec.cell_size();
  // Grid extent relative to the origin: cell centers sit at multiples of cs.
  const double lo_x = (-spec.center_index() - 0.5) * cs;
  const double hi_y = (spec.center_index() + 0.5) * cs;
  std::uniform_real_distribution<double> u(0.0, spec.side_length);
  std::normal_distribution<double> v(0.0, sigma_v);
  ps.particles.resize(static_cast<std::size_t>(count));
  for (auto& p : ps.particles) {
    const double x = lo_x + u(ps.rng);
    const double y = hi_y - u(ps.rng);
    p.position = origin + Vec2{x, y};
    p.velocity.x = v(ps.rng);
    p.velocity.y = v(ps.rng);
    p.weight = init_weight;
  }
  return ps;
}

ParticleSet predict_particles(ParticleSet ps, const GridSpec& spec, Vec2 origin, double dt,
                              double q_pos, double q_vel, double p_survive) {
  if (!(dt > 0)) fail(ErrorCode::kInvalidArgument, "dt must be > 0");
  std::normal_distribution<double> unit(0.0, 1.0);
  for (auto& p : ps.particles) {
    const double npx = q_pos > 0 ? q_pos * unit(ps.rng) : 0.0;
    const double npy = q_pos > 0 ? q_pos * unit(ps.rng) : 0.0;
    const double nvx = q_vel > 0 ? q_vel * unit(ps.rng) : 0.0;
    const double nvy = q_vel > 0 ? q_vel * unit(ps.rng) : 0.0;
    p.position = p.position + p.velocity * dt + Vec2{npx, npy};
    p.velocity = p.velocity + Vec2{nvx, nvy};
    p.weight *= p_survive;
    if (!cell_of(spec, origin, p.position)) p.weight = 0.0;
  }
  return ps;
}

OccupancyUpdate update_occupancy(ParticleSet ps, const EvidentialGrid& measurement,
                                 const EvidentialGrid& prior, double alpha) {
  require_same_spec(measurement.spec, prior.spec, "update_occupancy");
  if (measurement.origin != prior.origin) {
    fail(ErrorCode::kSpecMismatch, "update_occupancy: prior and measurement origins differ");
  }
  const GridSpec& spec = measurement.spec;
  const Vec2 origin = measurement.origin;
  const std::size_t n = spec.cell_count();

  std::vector<std::size_t> cell(ps.size(), n);
  std::vector<double> sums(n, 0.0);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (const auto c = cell_of(spec, origin, ps.particles[i].position)) {
      cell[i] = *c;
      sums[*c] += ps.particles[i].weight;
    }
  }

  std::vector<MassCell> predicted(n);
  std::vector<double> predicted_mass(n);
  for (std::size_t c = 0; c < n; ++c) {
    const double occ = std::min(1.0, sums[c]);
    predicted_mass[c] = occ;
    predicted[c] = {occ, std::min(prior.cells[c].free, 1.0 - occ)};
  }

  OccupancyUpdate out;
  out.posterior = vacuous_grid(spec, origin);
  out.posterior.frame_index = measurement.frame_index;
  out.posterior.timestamp = measurement.timestamp;
  const std::size_t done = simd::active_kernels().fuse(
      predicted.data(), measurement.cells.data(), alpha, out.posterior.cells.data(), n);
  if (done != n) {
    const CellIndex at{static_cast<int>(done / spec.cells_per_side),
                       static_cast<int>(done % spec.cells_per_side)};
    throw Error(ErrorCode::kTotalConflict, "update_occupancy: total conflict", at);
  }

  for (std::size_t i = 0; i < ps.size(); ++i) {
    const std::size_t c = cell[i];
    if (c == n || !(sums[c] > 0.0)) continue;
    ps.particles[i].weight *= out.posterior.cells[c].occ / sums[c];
  }
  out.particles = std::move(ps);
  out.predicted_mass = std::move(predicted_mass);
  return out;
}

ParticleSet normalize_weights(ParticleSet ps, const EvidentialGrid& posterior) {
  const GridSpec& spec = posterior.spec;
  const std::size_t n = spec.cell_count();
  std::vector<std::size_t> cell(ps.size(), n);
  std::vector<double> sums(n, 0.0);
  bool any = false;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    any = any || ps.particles[i].weight > 0.0;
    if (const auto c = cell_of(spec, posterior.origin, ps.particles[i].position)) {
      cell[i] = *c;
      sums[*c] += ps.particles[i].weight;
    }
  }
  if (!any) fail(ErrorCode::kDegenerateWeights, "all particle weights are zero");
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const std::size_t c = cell[i];
    if (c == n || !(sums[c] > 0.0)) continue;
    const double target = posterior.cells[c].occ;
    if (std::abs(sums[c] - target) > 1e-9) ps.particles[i].weight *= target / sums[c];
  }
  return ps;
}

ParticleSet birth_particles(ParticleSet ps, const EvidentialGrid& posterior, int n_birth,
                            double sigma_v, BirthPlacement placement, double mass_fraction) {
  if (n_birth <= 0) return ps;
  const GridSpec& spec = posterior.spec;
  double total_occ = 0.0;
  for (const auto& c : posterior.cells) total_occ += c.occ;
  if (!(total_occ > 0.0)) return ps;

  std::vector<double> cell_weights(spec.cell_count(), 1.0);
  double residual_total = 0.0;
  if (placement != BirthPlacement::kUniform) {
    if (placement == BirthPlacement::kResidual) {
      const auto carried = cell_weight_sums(ps, spec, posterior.origin);
      for (std::size_t c = 0; c < cell_weights.size(); ++c) {
        cell_weights[c] = std::max(0.0, posterior.cells[c].occ - carried[c]);
        residual_total += cell_weights[c];
      }
    }
    if (!(residual_total > 1e-9)) {
      for (std::size_t c = 0; c < cell_weights.size(); ++c) {
        cell_weights[c] = std::max(0.0, posterior.cells[c].occ);
      }
    }
  }
  std::discrete_distribution<std::size_t> pick(cell_weights.begin(), cell_weights.end());
  std::uniform_real_distribution<double> jitter(-0.5, 0.5);
  std::normal_distribution<double> vel(0.0, sigma_v);
  const double cs = spec.cell_size();
  const double w = mass_fraction * total_occ / n_birth;
  ps.particles.reserve(ps.particles.size() + static_cast<std::size_t>(n_birth));
  for (int i = 0; i < n_birth; ++i) {
    const std::size_t c = pick(ps.rng);
    const int row = static_cast<int>(c / spec.cells_per_side);
    const int col = static_cast<int>(c % spec.cells_per_side);
    const Vec2 center = posterior.origin + spec.cell_center(row, col);
    Particle p;
    const double jx = jitter(ps.rng);
    const double jy = jitter(ps.rng);
    p.position = center + Vec2{jx * cs, jy * cs};
    p.velocity.x = vel(ps.rng);
    p.velocity.y = vel(ps.rng);
    p.weight = w;
    ps.particles.push_back(p);
  }
  return ps;
}

ParticleSet resample(ParticleSet pool, int count, std::optional<double> offset) {
  if (count < 1) fail(ErrorCode::kInvalidArgument, "resample count must be >= 1");
  const double total = pool.total_weight();
  if (!(total > 0.0)) fail(ErrorCode::kDegenerateWeights, "resampling a pool with zero weight");
  const double frac =
      offset ? *offset : std::uniform_real_distribution<double>(0.0, 1.0)(pool.rng);
  const double step = total / count;

  ParticleSet out;
  out.rng = pool.rng;
  out.particles.reserve(static_cast<std::size_t>(count));
  std::size_t src = 0;
  double cumulative = pool.particles.empty() ? 0.0 : pool.particles[0].weight;
  for (int k = 0; k < count; ++k) {
    const double target = (k + frac) * step;
    while (cumulative <= target && src + 1 < pool.particles.size()) {
      cumulative += pool.particles[++src].weight;
    }
    // Trailing zero-weight particles must never be picked.
    while (pool.particles[src].weight <= 0.0 && src > 0) --src;
    Particle p = pool.particles[src];
    p.weight = step;
    out.particles.push_back(p);
  }
  return out;
}

io::Bytes encode_particles(const ParticleSet& ps) {
  io::Bytes out;
  out.reserve(20 * ps.size());
  for (const auto& p : ps.particles) {
    io::put_le(out, static_cast<float>(p.position.x));
    io::put_le(out, static_cast<float>(p.position.y));
    io::put_le(out, static_cast<float>(p.velocity.x));
    io::put_le(out, static_cast<float>(p.velocity.y));
    io::put_le(out, static_cast<float>(p.weight));
  }
  return out;
}

ParticleSet decode_particles(std::span<const std::byte> data) {
  if (data.size() % 20 != 0) {
    fail(ErrorCode::kTrailingBytes, "particle dump is not a multiple of 20 bytes");
  }
  io::LeReader in(data);
  ParticleSet ps;
  ps.particles.resize(data.size() / 20);
  for (auto& p : ps.particles) {
    p.position.x = in.get<float>();
    p.position.y = in.get<float>();
    p.velocity.x = in.get<float>();
    p.velocity.y = in.get<float>();
    p.weight = in.get<float>();
  }
  return ps;
}

}  // namespace dogma
