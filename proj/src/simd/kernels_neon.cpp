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

#include "dogma/simd/kernels.hpp"
#include "kernels_internal.hpp"

#if defined(__aarch64__)
#define DOGMA_HAVE_NEON_KERNELS 1
#include <arm_neon.h>
#endif

namespace dogma::simd {

#if DOGMA_HAVE_NEON_KERNELS
namespace {

// One cell per register, [occ, free].
std::size_t fuse_neon(const MassCell* prior, const MassCell* meas, double alpha,
                      MassCell* out, std::size_t n) {
  const float64x2_t one = vdupq_n_f64(1.0);
  const float64x2_t va = vdupq_n_f64(alpha);
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t a = vminq_f64(vmulq_f64(va, vld1q_f64(&prior[i].occ)), one);
    const float64x2_t b = vld1q_f64(&meas[i].occ);
    const float64x2_t a_sw = vextq_f64(a, a, 1);
    const float64x2_t b_sw = vextq_f64(b, b, 1);
    const float64x2_t au = vsubq_f64(one, vaddq_f64(a, a_sw));
    const float64x2_t bu = vsubq_f64(one, vaddq_f64(b, b_sw));
    const float64x2_t cross = vmulq_f64(a, b_sw);
    const float64x2_t denom =
        vsubq_f64(one, vaddq_f64(cross, vextq_f64(cross, cross, 1)));
    if (vgetq_lane_f64(denom, 0) <= kConflictEpsilon) {
      return i + detail::fuse_scalar(prior + i, meas + i, alpha, out + i, n - i);
    }
    const float64x2_t num = vaddq_f64(
        vaddq_f64(vmulq_f64(a, b), vmulq_f64(a, bu)), vmulq_f64(au, b));
    vst1q_f64(&out[i].occ, vdivq_f64(num, denom));
  }
  return n;
}

void pignistic_neon(const MassCell* cells, double* out, std::size_t n) {
  const float64x2_t one = vdupq_n_f64(1.0);
  const float64x2_t half = vdupq_n_f64(0.5);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t v0 = vld1q_f64(&cells[i].occ);
    const float64x2_t v1 = vld1q_f64(&cells[i + 1].occ);
    const float64x2_t occ = vzip1q_f64(v0, v1);
    const float64x2_t fr = vzip2q_f64(v0, v1);
    vst1q_f64(out + i,
              vaddq_f64(occ, vmulq_f64(vsubq_f64(one, vaddq_f64(occ, fr)), half)));
  }
  detail::pignistic_scalar(cells + i, out + i, n - i);
}

double sum_squared_diff_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t d = vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
    acc = vaddq_f64(acc, vmulq_f64(d, d));
  }
  return vaddvq_f64(acc) + detail::sum_squared_diff_scalar(a + i, b + i, n - i);
}

constexpr KernelTable kNeon{Isa::kNeon, &fuse_neon, &pignistic_neon,
                            &sum_squared_diff_neon};

}  // namespace

const KernelTable* neon_kernels() { return &kNeon; }

#else

const KernelTable* neon_kernels() { return nullptr; }

#endif

}  // namespace dogma::simd
