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

#include "dogma/measurement/raytrace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dogma {
namespace {

// Amanatides-Woo stepping. The number of steps per axis is fixed up front
// from the start and end cells, so the walk always lands exactly on the end
// cell regardless of rounding in the crossing parameters.
template <class Visit>
void walk(const GridSpec& spec, double u0, double v0, double u1, double v1, Visit&& visit) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  long col = static_cast<long>(std::floor(u0));
  long row = static_cast<long>(std::floor(v0));
  const long end_col = static_cast<long>(std::floor(u1));
  const long end_row = static_cast<long>(std::floor(v1));
  const double du = u1 - u0;
  const double dv = v1 - v0;
  const long step_c = du > 0 ? 1 : -1;
  const long step_r = dv > 0 ? 1 : -1;
  long left_c = std::labs(end_col - col);
  long left_r = std::labs(end_row - row);
  const double delta_c = du != 0 ? std::abs(1.0 / du) : kInf;
  const double delta_r = dv != 0 ? std::abs(1.0 / dv) : kInf;
  double next_c = du != 0 ? (du > 0 ? (col + 1 - u0) : (u0 - col)) * delta_c : kInf;
  double next_r = dv != 0 ? (dv > 0 ? (row + 1 - v0) : (v0 - row)) * delta_r : kInf;

  while (left_c + left_r > 0) {
    if (left_c > 0 && (left_r == 0 || next_c < next_r)) {
      col += step_c;
      next_c += delta_c;
      --left_c;
    } else {
      row += step_r;
      next_r += delta_r;
      --left_r;
    }
    if (left_c + left_r == 0) return;  // reached the end cell
    if (row < 0 || col < 0 || row >= spec.cells_per_side || col >= spec.cells_per_side) {
      return;
    }
    visit(static_cast<int>(row), static_cast<int>(col));
  }
}

}  // namespace

std::vector<CellIndex> traverse(const GridSpec& spec, double col0, double row0,
                                double col1, double row1) {
  std::vector<CellIndex> out;
  walk(spec, col0, row0, col1, row1,
       [&](int r, int c) { out.push_back({r, c}); });
  return out;
}

MeasurementGrid raytrace(const PointCloud& cloud, const GridSpec& spec) {
  spec.validate();
  MeasurementGrid mg;
  mg.spec = spec;
  mg.labels.assign(spec.cell_count(), CellLabel::kUnknown);
  mg.frame_index = cloud.frame_index;
  mg.origin = spec.snap(cloud.sensor_pose.position);

  const Vec2 sensor = cloud.sensor_pose.position - mg.origin;
  const double u0 = spec.col_coord(sensor.x);
  const double v0 = spec.row_coord(sensor.y);

  std::vector<Vec2> ends;
  ends.reserve(cloud.points.size());
  for (const Point& p : cloud.points) {
    const Vec2 local = sensor + rotate({p.x, p.y}, cloud.sensor_pose.heading);
    ends.push_back(local);
    if (const auto cell = spec.locate(local)) {
      mg.labels[spec.flat(cell->row, cell->col)] = CellLabel::kOccupied;
    }
  }
  // Far endpoints are pulled back along the ray to a ring just outside the
  // grid; the cells crossed inside the grid are unchanged.
  const double lo = -1.0;
  const double hi = spec.cells_per_side + 1.0;
  for (const Vec2& e : ends) {
    const double ue = spec.col_coord(e.x);
    const double ve = spec.row_coord(e.y);
    const double du = ue - u0;
    const double dv = ve - v0;
    double t = 1.0;
    if (du > 0) t = std::min(t, (hi - u0) / du);
    if (du < 0) t = std::min(t, (lo - u0) / du);
    if (dv > 0) t = std::min(t, (hi - v0) / dv);
    if (dv < 0) t = std::min(t, (lo - v0) / dv);
    const double u1 = t < 1.0 ? u0 + t * du : ue;
    const double v1 = t < 1.0 ? v0 + t * dv : ve;
    walk(spec, u0, v0, u1, v1, [&](int r, int c) {
      auto& label = mg.labels[spec.flat(r, c)];
      if (label == CellLabel::kUnknown) label = CellLabel::kFree;
    });
  }
  return mg;
}

EvidentialGrid to_evidential(const MeasurementGrid& grid, double m_occ, double m_free) {
  EvidentialGrid g = vacuous_grid(grid.spec, grid.origin);
  g.frame_index = grid.frame_index;
  for (std::size_t i = 0; i < grid.labels.size(); ++i) {
    switch (grid.labels[i]) {
      case CellLabel::kOccupied: g.cells[i] = MassCell::occupied(m_occ); break;
      case CellLabel::kFree: g.cells[i] = MassCell::freespace(m_free); break;
      case CellLabel::kUnknown: break;
    }
  }
  return g;
}

}  // namespace dogma
