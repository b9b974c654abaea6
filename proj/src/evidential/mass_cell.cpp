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

#include "dogma/evidential/mass_cell.hpp"

#include <algorithm>

#include "dogma/common/error.hpp"
#include "dogma/simd/kernels.hpp"

namespace dogma {

bool is_valid(const MassCell& c, double tol) {
  return c.occ >= -tol && c.free >= -tol && c.occ + c.free <= 1.0 + tol;
}

double conflict(const MassCell& a, const MassCell& b) {
  return a.occ * b.free + a.free * b.occ;
}

// Products of intersecting focal sets:
//   {O}:   O*O + O*Omega + Omega*O
//   {F}:   F*F + F*Omega + Omega*F
//   empty: O*F + F*O  (conflict K, normalized away)
MassCell combine(const MassCell& a, const MassCell& b) {
  MassCell out;
  if (simd::scalar_kernels().fuse(&a, &b, 1.0, &out, 1) != 1) {
    throw Error(ErrorCode::kTotalConflict,
                "Dempster combination with conflict K = " +
                    std::to_string(conflict(a, b)));
  }
  return out;
}

MassCell discount(const MassCell& c, double alpha) {
  return {std::min(alpha * c.occ, 1.0), std::min(alpha * c.free, 1.0)};
}

double pignistic(const MassCell& c) { return c.occ + c.unknown() * 0.5; }

double pignistic_free(const MassCell& c) { return c.free + c.unknown() * 0.5; }

}  // namespace dogma
