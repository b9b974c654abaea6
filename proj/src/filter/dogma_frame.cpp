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

#include "dogma/filter/dogma_frame.hpp"

#include <algorithm>

#include "dogma/simd/kernels.hpp"

namespace dogma {

std::vector<CellStats> cell_stats(const ParticleSet& ps, const EvidentialGrid& posterior,
                                  Vec2 ego_velocity) {
  const GridSpec& spec = posterior.spec;
  const std::size_t n = spec.cell_count();
  std::vector<CellStats> out(n);
  std::vector<double> sw(n, 0.0), sx(n, 0.0), sy(n, 0.0);
  std::vector<std::size_t> cell(ps.size(), n);

  for (std::size_t i = 0; i < ps.size(); ++i) {
    const Particle& p = ps.particles[i];
    const auto c = cell_of(spec, posterior.origin, p.position);
    if (!c) continue;
    cell[i] = *c;
    out[*c].count += 1;
    sw[*c] += p.weight;
    sx[*c] += p.weight * p.velocity.x;
    sy[*c] += p.weight * p.velocity.y;
  }
  for (std::size_t c = 0; c < n; ++c) {
    out[c].m_occ = posterior.cells[c].occ;
    if (sw[c] > 0.0) out[c].mean = {sx[c] / sw[c], sy[c] / sw[c]};
    out[c].valid = out[c].count >= 2 && sw[c] > 0.0;
  }
  // Second pass around the mean keeps the covariance PSD in floating point.
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const std::size_t c = cell[i];
    if (c == n || !out[c].valid) continue;
    const Particle& p = ps.particles[i];
    const double dx = p.velocity.x - out[c].mean.x;
    const double dy = p.velocity.y - out[c].mean.y;
    const double w = p.weight / sw[c];
    out[c].pxx += w * dx * dx;
    out[c].pxy += w * dx * dy;
    out[c].pyy += w * dy * dy;
  }
  for (auto& s : out) s.mean = s.mean - ego_velocity;
  return out;
}

double mahalanobis(const CellStats& s, double epsilon_reg) {
  const double a = s.pxx + epsilon_reg;
  const double b = s.pxy;
  const double d = s.pyy + epsilon_reg;
  const double det = a * d - b * b;
  const double vx = s.mean.x;
  const double vy = s.mean.y;
  return (d * vx * vx - 2.0 * b * vx * vy + a * vy * vy) / det;
}

std::vector<std::uint8_t> mahalanobis_gate(std::span<const CellStats> stats, double tau,
                                           double epsilon_reg) {
  std::vector<std::uint8_t> mask(stats.size(), 0);
  for (std::size_t c = 0; c < stats.size(); ++c) {
    mask[c] = stats[c].valid && mahalanobis(stats[c], epsilon_reg) > tau ? 1 : 0;
  }
  return mask;
}

std::vector<double> DogmaFrame::occupancy_probability() const {
  const auto occ = channel(0);
  if (mode == DogmaMode::kProbabilistic) return {occ.begin(), occ.end()};
  const auto fr = channel(1);
  std::vector<MassCell> cells(spec.cell_count());
  for (std::size_t c = 0; c < cells.size(); ++c) cells[c] = {occ[c], fr[c]};
  std::vector<double> out(cells.size());
  simd::active_kernels().pignistic(cells.data(), out.data(), out.size());
  return out;
}

DogmaFrame build_dogma(const EvidentialGrid& posterior, std::span<const CellStats> stats,
                       std::span<const std::uint8_t> mask, double v_max, double m_occ_min,
                       DogmaMode mode) {
  const std::size_t n = posterior.spec.cell_count();
  if (stats.size() != n || mask.size() != n) {
    fail(ErrorCode::kSpecMismatch, "build_dogma: stats or mask size differs from the grid");
  }
  DogmaFrame f;
  f.spec = posterior.spec;
  f.mode = mode;
  f.frame_index = posterior.frame_index;
  f.timestamp = posterior.timestamp;
  f.origin = posterior.origin;
  f.data.assign(static_cast<std::size_t>(f.channels()) * n, 0.0);

  int vel = 1;
  if (mode == DogmaMode::kDst) {
    auto occ = f.channel(0);
    auto fr = f.channel(1);
    for (std::size_t c = 0; c < n; ++c) {
      occ[c] = posterior.cells[c].occ;
      fr[c] = posterior.cells[c].free;
    }
    vel = 2;
  } else {
    simd::active_kernels().pignistic(posterior.cells.data(), f.channel(0).data(), n);
  }
  auto vx = f.channel(vel);
  auto vy = f.channel(vel + 1);
  for (std::size_t c = 0; c < n; ++c) {
    if (!mask[c] || posterior.cells[c].occ < m_occ_min) continue;
    vx[c] = std::clamp(stats[c].mean.x / v_max, -1.0, 1.0);
    vy[c] = std::clamp(stats[c].mean.y / v_max, -1.0, 1.0);
  }
  return f;
}

io::GridTensor to_tensor(const DogmaFrame& f) {
  io::GridTensor t;
  t.channels = static_cast<std::uint32_t>(f.channels());
  t.height = static_cast<std::uint32_t>(f.spec.cells_per_side);
  t.width = t.height;
  t.frame_index = static_cast<std::uint64_t>(f.frame_index);
  t.timestamp = f.timestamp;
  t.values.assign(f.data.begin(), f.data.end());
  return t;
}

DogmaFrame dogma_from_tensor(const io::GridTensor& t, const GridSpec& spec) {
  if (t.height != static_cast<std::uint32_t>(spec.cells_per_side) || t.width != t.height) {
    fail(ErrorCode::kSpecMismatch, "DOGMa tensor does not match the grid geometry");
  }
  if (t.channels != 3 && t.channels != 4) {
    fail(ErrorCode::kFormat, "DOGMa tensor must have 3 or 4 channels, got " +
                                 std::to_string(t.channels));
  }
  DogmaFrame f;
  f.spec = spec;
  f.mode = t.channels == 4 ? DogmaMode::kDst : DogmaMode::kProbabilistic;
  f.frame_index = static_cast<std::int64_t>(t.frame_index);
  f.timestamp = t.timestamp;
  f.data.assign(t.values.begin(), t.values.end());
  return f;
}

}  // namespace dogma
