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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dogma/common/error.hpp"
#include "dogma/common/geometry.hpp"
#include "dogma/evidential/mass_cell.hpp"

namespace dogma {

/// Square, ego-centered grid geometry.
///
/// Columns grow towards +x (east) and rows grow towards -y (south), so row 0
/// is the northern edge. The ego sits in cell (n/2, n/2), whose center is the
/// grid origin. The cell size is derived from the side length rather than
/// stored separately.
struct GridSpec {
  int cells_per_side = 128;
  double side_length = 42.7;

  double cell_size() const { return side_length / cells_per_side; }
  int center_index() const { return cells_per_side / 2; }
  std::size_t cell_count() const {
    return static_cast<std::size_t>(cells_per_side) * cells_per_side;
  }
  std::size_t flat(int row, int col) const {
    return static_cast<std::size_t>(row) * cells_per_side + col;
  }
  bool contains(int row, int col) const {
    return row >= 0 && col >= 0 && row < cells_per_side && col < cells_per_side;
  }

  /// Continuous grid coordinates of a point given relative to the origin.
  /// floor() of the result is the (row, col) index.
  double col_coord(double local_x) const;
  double row_coord(double local_y) const;

  /// Cell containing a point relative to the origin, if inside the grid.
  std::optional<CellIndex> locate(Vec2 local) const;

  /// Center of a cell relative to the origin.
  Vec2 cell_center(int row, int col) const;

  /// Snaps a world position onto the cell lattice; used as the grid origin
  /// so that grids from different frames differ by whole cells.
  Vec2 snap(Vec2 world) const;

  /// Throws Error(kInvalidArgument) unless cells_per_side is even and >= 2
  /// and the side length is positive.
  void validate() const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct EvidentialGrid {
  GridSpec spec;
  std::vector<MassCell> cells;
  std::int64_t frame_index = 0;
  double timestamp = 0.0;
  /// World position of the center of the ego cell.
  Vec2 origin;

  MassCell& at(int row, int col) { return cells[spec.flat(row, col)]; }
  const MassCell& at(int row, int col) const { return cells[spec.flat(row, col)]; }
};

EvidentialGrid vacuous_grid(const GridSpec& spec, Vec2 origin = {});

/// Discounts every prior cell by alpha and combines it with the matching
/// measurement cell. The result carries the measurement's origin and
/// timestamp and the prior's frame index plus one.
EvidentialGrid fuse_grid(const EvidentialGrid& prior,
                         const EvidentialGrid& measurement, double alpha);

/// Moves a grid onto a new lattice-aligned origin. Cells shifted in from
/// outside the old extent are vacuous.
EvidentialGrid recenter(const EvidentialGrid& grid, Vec2 new_origin);

/// Pignistic probability of every cell, row-major.
std::vector<double> pignistic_grid(const EvidentialGrid& grid);

void require_same_spec(const GridSpec& a, const GridSpec& b, const char* what);

}  // namespace dogma
