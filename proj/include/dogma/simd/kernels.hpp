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
#include <string_view>
#include <vector>

#include "dogma/evidential/mass_cell.hpp"

namespace dogma::simd {

enum class Isa { kScalar, kAvx2, kNeon };

std::string_view to_string(Isa isa);

// Per-cell arithmetic over flat grid buffers. Every table entry has the same
// contract as its scalar reference; the elementwise kernels (fuse, pignistic)
// are bit-identical across variants, reductions agree to rounding.
struct KernelTable {
  Isa isa;

  // out[i] = combine(discount(prior[i], alpha), meas[i]) for i < n.
  // Returns n on success, otherwise the index of the first cell whose
  // normalization denominator is <= kConflictEpsilon; cells before that
  // index have been written.
  std::size_t (*fuse)(const MassCell* prior, const MassCell* meas,
                      double alpha, MassCell* out, std::size_t n);

  // out[i] = occ + (1 - (occ + free)) * 0.5
  void (*pignistic)(const MassCell* cells, double* out, std::size_t n);

  // sum_i (a[i] - b[i])^2
  double (*sum_squared_diff)(const double* a, const double* b, std::size_t n);
};

const KernelTable& scalar_kernels();

/// nullptr when the variant is not compiled in or the CPU lacks it.
const KernelTable* avx2_kernels();
const KernelTable* neon_kernels();

/// Best variant for this CPU. The DOGMA_SIMD environment variable
/// ("scalar", "avx2", "neon") overrides the choice when that variant is
/// available.
const KernelTable& active_kernels();

/// Every variant usable on this machine, scalar first.
std::vector<const KernelTable*> available_kernels();

}  // namespace dogma::simd
