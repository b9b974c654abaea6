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

#include "dogma/predict/predictors.hpp"

#include <algorithm>

#include "dogma/simd/kernels.hpp"

namespace dogma::predict {

OccupancyGrid occupancy_of(const DogmaFrame& frame) {
  return {frame.spec, frame.occupancy_probability()};
}

double mse(const OccupancyGrid& pred, const OccupancyGrid& target) {
  require_same_spec(pred.spec, target.spec, "mse");
  if (pred.values.size() != target.values.size() || pred.values.empty()) {
    fail(ErrorCode::kSpecMismatch, "mse: grids hold different cell counts");
  }
  const double ss = simd::active_kernels().sum_squared_diff(
      pred.values.data(), target.values.data(), pred.values.size());
  return ss / static_cast<double>(pred.values.size());
}

double mse(const OccupancyGrid& pred, const OccupancyGrid& target,
           std::span<const std::uint8_t> mask) {
  require_same_spec(pred.spec, target.spec, "mse");
  if (pred.values.size() != target.values.size() || mask.size() != pred.values.size()) {
    fail(ErrorCode::kSpecMismatch, "mse: grids or mask hold different cell counts");
  }
  double ss = 0.0;
  std::size_t n = 0;
  for (std::size_t c = 0; c < mask.size(); ++c) {
    if (!mask[c]) continue;
    const double d = pred.values[c] - target.values[c];
    ss += d * d;
    ++n;
  }
  return n == 0 ? 0.0 : ss / static_cast<double>(n);
}

std::vector<OccupancyGrid> static_predictor(const OccupancyGrid& last_seen, int horizon) {
  if (horizon < 1) fail(ErrorCode::kInvalidArgument, "horizon must be >= 1");
  return std::vector<OccupancyGrid>(static_cast<std::size_t>(horizon), last_seen);
}

std::vector<std::vector<double>> propagate_mass(const FilterSnapshot& snap, int horizon,
                                                double dt, StaticParticles statics) {
  if (horizon < 1) fail(ErrorCode::kInvalidArgument, "horizon must be >= 1");
  const GridSpec& spec = snap.posterior.spec;
  const Vec2 origin0 = snap.posterior.origin;

  struct Moving {
    Vec2 position;
    Vec2 velocity;
    double weight;
    bool dynamic;
  };
  std::vector<Moving> parts;
  parts.reserve(snap.particles.size());
  for (const auto& p : snap.particles.particles) {
    if (!(p.weight > 0.0)) continue;
    const auto c = cell_of(spec, origin0, p.position);
    if (!c) continue;
    const bool dynamic = !snap.dynamic_mask.empty() && snap.dynamic_mask[*c] != 0;
    if (!dynamic && statics == StaticParticles::kDrop) continue;
    parts.push_back({p.position, p.velocity, p.weight, dynamic});
  }

  std::vector<std::vector<double>> out;
  out.reserve(static_cast<std::size_t>(horizon));
  for (int k = 1; k <= horizon; ++k) {
    const Vec2 origin = spec.snap(origin0 + snap.ego_velocity * (k * dt));
    std::vector<double> mass(spec.cell_count(), 0.0);
    for (auto& p : parts) {
      if (p.dynamic) p.position = p.position + p.velocity * dt;
      if (const auto c = cell_of(spec, origin, p.position)) mass[*c] += p.weight;
    }
    for (auto& m : mass) m = std::min(1.0, m);
    out.push_back(std::move(mass));
  }
  return out;
}

std::vector<OccupancyGrid> pf_predictor(const FilterSnapshot& snap, int horizon, double dt,
                                        const PfOptions& options) {
  const GridSpec& spec = snap.posterior.spec;
  auto masses = propagate_mass(snap, horizon, dt, options.static_particles);
  std::vector<OccupancyGrid> out;
  out.reserve(masses.size());
  for (int k = 1; k <= horizon; ++k) {
    auto& mass = masses[static_cast<std::size_t>(k - 1)];
    if (options.mode == DogmaMode::kProbabilistic) {
      out.push_back({spec, std::move(mass)});
      continue;
    }
    // Last observed free mass, carried along with the grid.
    const Vec2 origin = spec.snap(snap.posterior.origin + snap.ego_velocity * (k * dt));
    const EvidentialGrid last = recenter(snap.posterior, origin);
    std::vector<MassCell> cells(mass.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      cells[c] = {mass[c], std::min(last.cells[c].free, 1.0 - mass[c])};
    }
    OccupancyGrid g{spec, std::vector<double>(cells.size())};
    simd::active_kernels().pignistic(cells.data(), g.values.data(), cells.size());
    out.push_back(std::move(g));
  }
  return out;
}

OccupancyGrid Sequence::target(int step) const {
  if (step < 1 || step > kHorizon) fail(ErrorCode::kInvalidArgument, "step out of range");
  if (!targets.empty()) {
    if (targets.size() != static_cast<std::size_t>(kHorizon)) {
      fail(ErrorCode::kBadSequenceLength, "sequence targets must hold 15 grids");
    }
    return targets[static_cast<std::size_t>(step - 1)];
  }
  return occupancy_of(frames.at(static_cast<std::size_t>(kSeedFrames + step - 1)));
}

namespace {

void require_seed(const Sequence& seq) {
  if (seq.frames.size() < static_cast<std::size_t>(kSeedFrames)) {
    fail(ErrorCode::kBadSequenceLength, "sequence shorter than the seed length");
  }
}

}  // namespace

std::vector<OccupancyGrid> StaticPredictor::predict(const Sequence& seq, int horizon,
                                                    double) const {
  require_seed(seq);
  return static_predictor(occupancy_of(seq.frames[kSeedFrames - 1]), horizon);
}

std::vector<OccupancyGrid> PfPredictor::predict(const Sequence& seq, int horizon,
                                                double dt) const {
  require_seed(seq);
  if (!seq.snapshot) {
    fail(ErrorCode::kInvalidArgument, "particle baseline needs a filter snapshot");
  }
  return pf_predictor(*seq.snapshot, horizon, dt,
                      {statics_, seq.frames[kSeedFrames - 1].mode});
}

std::unique_ptr<Predictor> make_predictor(const std::string& id) {
  if (id == "static") return std::make_unique<StaticPredictor>();
  if (id == "pf") return std::make_unique<PfPredictor>();
  fail(ErrorCode::kConfig, "unknown predictor '" + id + "' (expected static or pf)");
}

}  // namespace dogma::predict
