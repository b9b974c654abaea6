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

#include "dogma/evidential/grid.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "dogma/simd/kernels.hpp"

namespace dogma {

double GridSpec::col_coord(double local_x) const {
  return local_x / cell_size() + center_index() + 0.5;
}

double GridSpec::row_coord(double local_y) const {
  return center_index() + 0.5 - local_y / cell_size();
}

std::optional<CellIndex> GridSpec::locate(Vec2 local) const {
  const double c = std::floor(col_coord(local.x));
  const double r = std::floor(row_coord(local.y));
  if (!(c >= 0.0 && r >= 0.0 && c < cells_per_side && r < cells_per_side)) {
    return std::nullopt;
  }
  return CellIndex{static_cast<int>(r), static_cast<int>(c)};
}

Vec2 GridSpec::cell_center(int row, int col) const {
  const double cs = cell_size();
  return {(col - center_index()) * cs, (center_index() - row) * cs};
}

Vec2 GridSpec::snap(Vec2 world) const {
  const double cs = cell_size();
  return {std::round(world.x / cs) * cs, std::round(world.y / cs) * cs};
}

void GridSpec::validate() const {
  if (cells_per_side < 2 || cells_per_side % 2 != 0) {
    fail(ErrorCode::kInvalidArgument,
         "cells_per_side must be even and >= 2, got " +
             std::to_string(cells_per_side));
  }
  if (!(side_length > 0.0) || !std::isfinite(side_length)) {
    fail(ErrorCode::kInvalidArgument, "side_length must be positive");
  }
}

void require_same_spec(const GridSpec& a, const GridSpec& b, const char* what) {
  if (a != b) {
    std::ostringstream msg;
    msg << what << ": grid geometry differs (" << a.cells_per_side << " cells / "
        << a.side_length << " m vs " << b.cells_per_side << " cells / "
        << b.side_length << " m)";
    fail(ErrorCode::kSpecMismatch, msg.str());
  }
}

EvidentialGrid vacuous_grid(const GridSpec& spec, Vec2 origin) {
  spec.validate();
  EvidentialGrid g;
  g.spec = spec;
  g.cells.assign(spec.cell_count(), MassCell::vacuous());
  g.origin = origin;
  return g;
}

EvidentialGrid fuse_grid(const EvidentialGrid& prior,
                         const EvidentialGrid& measurement, double alpha) {
  require_same_spec(prior.spec, measurement.spec, "fuse_grid");
  if (prior.origin != measurement.origin) {
    fail(ErrorCode::kSpecMismatch, "fuse_grid: grids are centered at different origins");
  }
  EvidentialGrid out;
  out.spec = prior.spec;
  out.cells.resize(prior.cells.size());
  out.frame_index = prior.frame_index + 1;
  out.timestamp = measurement.timestamp;
  out.origin = measurement.origin;

  const std::size_t n = out.cells.size();
  const std::size_t done = simd::active_kernels().fuse(
      prior.cells.data(), measurement.cells.data(), alpha, out.cells.data(), n);
  if (done != n) {
    const CellIndex cell{static_cast<int>(done / prior.spec.cells_per_side),
                         static_cast<int>(done % prior.spec.cells_per_side)};
    throw Error(ErrorCode::kTotalConflict,
                "fuse_grid: total conflict at cell (" + std::to_string(cell.row) +
                    ", " + std::to_string(cell.col) + ")",
                cell);
  }
  return out;
}

EvidentialGrid recenter(const EvidentialGrid& grid, Vec2 new_origin) {
  const GridSpec& spec = grid.spec;
  const double cs = spec.cell_size();
  const long dc = std::lround((new_origin.x - grid.origin.x) / cs);
  const long dr = -std::lround((new_origin.y - grid.origin.y) / cs);

  EvidentialGrid out = grid;
  out.origin = new_origin;
  if (dc == 0 && dr == 0) return out;
  const long n = spec.cells_per_side;
  for (long r = 0; r < n; ++r) {
    for (long c = 0; c < n; ++c) {
      const long src_r = r + dr;
      const long src_c = c + dc;
      const bool inside = src_r >= 0 && src_c >= 0 && src_r < n && src_c < n;
      out.cells[r * n + c] =
          inside ? grid.cells[src_r * n + src_c] : MassCell::vacuous();
    }
  }
  return out;
}

std::vector<double> pignistic_grid(const EvidentialGrid& grid) {
  std::vector<double> out(grid.cells.size());
  simd::active_kernels().pignistic(grid.cells.data(), out.data(), out.size());
  return out;
}

}  // namespace dogma
