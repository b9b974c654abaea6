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

#include <algorithm>

#include "dogma/simd/kernels.hpp"
#include "kernels_internal.hpp"

namespace dogma::simd {
namespace detail {

std::size_t fuse_scalar(const MassCell* prior, const MassCell* meas,
                        double alpha, MassCell* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double ao = std::min(alpha * prior[i].occ, 1.0);
    const double af = std::min(alpha * prior[i].free, 1.0);
    const double bo = meas[i].occ;
    const double bf = meas[i].free;
    const double au = 1.0 - (ao + af);
    const double bu = 1.0 - (bo + bf);
    const double denom = 1.0 - (ao * bf + af * bo);
    if (denom <= kConflictEpsilon) return i;
    out[i].occ = (ao * bo + ao * bu + au * bo) / denom;
    out[i].free = (af * bf + af * bu + au * bf) / denom;
  }
  return n;
}

void pignistic_scalar(const MassCell* cells, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double occ = cells[i].occ;
    out[i] = occ + (1.0 - (occ + cells[i].free)) * 0.5;
  }
}

double sum_squared_diff_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

}  // namespace detail

namespace {

constexpr KernelTable kScalar{Isa::kScalar, &detail::fuse_scalar,
                              &detail::pignistic_scalar,
                              &detail::sum_squared_diff_scalar};

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

}  // namespace dogma::simd
