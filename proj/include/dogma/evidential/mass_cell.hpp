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

#include <type_traits>

namespace dogma {

/// Dempster-Shafer masses of one cell over the frame {F, O}.
///
/// Only the singleton masses are stored; the mass on {F,O} is whatever is
/// left over, so the three masses sum to one by construction.
struct MassCell {
  double occ = 0.0;
  double free = 0.0;

  /// Mass on {F,O}. Evaluated as 1 - (occ + free) so that every kernel
  /// variant produces the same bits.
  constexpr double unknown() const { return 1.0 - (occ + free); }

  static constexpr MassCell vacuous() { return {}; }
  static constexpr MassCell occupied(double m) { return {m, 0.0}; }
  static constexpr MassCell freespace(double m) { return {0.0, m}; }

  friend constexpr bool operator==(const MassCell&, const MassCell&) = default;
};

// The vector kernels view a cell array as interleaved (occ, free) doubles.
static_assert(sizeof(MassCell) == 2 * sizeof(double));
static_assert(std::is_standard_layout_v<MassCell>);

/// True when both masses are nonnegative and their sum does not exceed one
/// (within `tol`).
bool is_valid(const MassCell& c, double tol = 1e-9);

/// Conflict mass K between two cells (mass falling on the empty set).
double conflict(const MassCell& a, const MassCell& b);

/// Dempster's rule of combination. Throws Error(kTotalConflict) when the
/// normalization denominator 1 - K drops below kConflictEpsilon.
MassCell combine(const MassCell& a, const MassCell& b);

/// Information aging: scales both singleton masses by alpha (clamped at one)
/// and moves the remainder to {F,O}. alpha must lie in [0, 1].
MassCell discount(const MassCell& c, double alpha);

/// Pignistic probability of {O}: occ + unknown / 2.
double pignistic(const MassCell& c);

/// Pignistic probability of {F}.
double pignistic_free(const MassCell& c);

inline constexpr double kConflictEpsilon = 1e-12;

}  // namespace dogma
