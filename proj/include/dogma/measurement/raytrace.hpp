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
#include <vector>

#include "dogma/evidential/grid.hpp"
#include "dogma/measurement/point_cloud.hpp"

namespace dogma {

// Ordered so that merging labels is max(): OCCUPIED beats FREE beats UNKNOWN.
enum class CellLabel : std::uint8_t { kUnknown = 0, kFree = 1, kOccupied = 2 };

struct MeasurementGrid {
  GridSpec spec;
  std::vector<CellLabel> labels;
  std::int64_t frame_index = 0;
  Vec2 origin;

  CellLabel at(int row, int col) const { return labels[spec.flat(row, col)]; }
};

/// Projects every point into an ego-centered grid and carves free space along
/// the ray from the ego cell to the hit cell.
///
/// Points are in the sensor frame and are rotated by the sensor heading; the
/// grid origin is the sensor position snapped to the cell lattice. The hit
/// cell becomes OCCUPIED, cells strictly between the ego cell and the hit cell
/// become FREE unless some return of the scan hit them. Rays ending outside
/// the grid carve FREE up to the boundary.
MeasurementGrid raytrace(const PointCloud& cloud, const GridSpec& spec);

/// Cells visited strictly after `start` along the integer traversal towards
/// `end` (continuous col/row coordinates), stopping before the end cell or at
/// the first cell outside the grid. Exposed for tests.
std::vector<CellIndex> traverse(const GridSpec& spec, double col0, double row0,
                                double col1, double row1);

/// OCCUPIED -> {O: m_occ}, FREE -> {F: m_free}, UNKNOWN -> vacuous.
EvidentialGrid to_evidential(const MeasurementGrid& grid, double m_occ, double m_free);

}  // namespace dogma
