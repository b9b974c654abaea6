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

#if defined(__x86_64__) || defined(_M_X64)
#define DOGMA_HAVE_AVX2_KERNELS 1
#include <immintrin.h>
#endif

namespace dogma::simd {

#if DOGMA_HAVE_AVX2_KERNELS
namespace {

// Compiled with a per-function target so the rest of the library keeps the
// baseline ISA. No FMA: the scalar reference is built without contraction and
// the two paths must agree bit for bit.
#define DOGMA_AVX2 __attribute__((target("avx2")))

// Two cells per register, laid out [occ0, free0, occ1, free1].
DOGMA_AVX2 std::size_t fuse_avx2(const MassCell* prior, const MassCell* meas,
                                 double alpha, MassCell* out, std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d va = _mm256_set1_pd(alpha);
  const __m256d eps = _mm256_set1_pd(kConflictEpsilon);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d p = _mm256_loadu_pd(&prior[i].occ);
    const __m256d b = _mm256_loadu_pd(&meas[i].occ);
    const __m256d a = _mm256_min_pd(_mm256_mul_pd(va, p), one);
    const __m256d a_sw = _mm256_permute_pd(a, 0b0101);
    const __m256d b_sw = _mm256_permute_pd(b, 0b0101);
    // Lane-symmetric: occ + free == free + occ exactly.
    const __m256d au = _mm256_sub_pd(one, _mm256_add_pd(a, a_sw));
    const __m256d bu = _mm256_sub_pd(one, _mm256_add_pd(b, b_sw));
    const __m256d cross = _mm256_mul_pd(a, b_sw);  // [ao*bf, af*bo]
    const __m256d k = _mm256_add_pd(cross, _mm256_permute_pd(cross, 0b0101));
    const __m256d denom = _mm256_sub_pd(one, k);
    if (_mm256_movemask_pd(_mm256_cmp_pd(denom, eps, _CMP_LE_OQ)) != 0) {
      return i + detail::fuse_scalar(prior + i, meas + i, alpha, out + i, n - i);
    }
    const __m256d num = _mm256_add_pd(
        _mm256_add_pd(_mm256_mul_pd(a, b), _mm256_mul_pd(a, bu)),
        _mm256_mul_pd(au, b));
    _mm256_storeu_pd(&out[i].occ, _mm256_div_pd(num, denom));
  }
  return i + detail::fuse_scalar(prior + i, meas + i, alpha, out + i, n - i);
}

DOGMA_AVX2 void pignistic_avx2(const MassCell* cells, double* out,
                               std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d half = _mm256_set1_pd(0.5);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v0 = _mm256_loadu_pd(&cells[i].occ);
    const __m256d v1 = _mm256_loadu_pd(&cells[i + 2].occ);
    const __m256d occ = _mm256_unpacklo_pd(v0, v1);  // cells 0,2,1,3
    const __m256d fr = _mm256_unpackhi_pd(v0, v1);
    const __m256d r = _mm256_add_pd(
        occ, _mm256_mul_pd(_mm256_sub_pd(one, _mm256_add_pd(occ, fr)), half));
    _mm256_storeu_pd(out + i, _mm256_permute4x64_pd(r, _MM_SHUFFLE(3, 1, 2, 0)));
  }
  detail::pignistic_scalar(cells + i, out + i, n - i);
}

DOGMA_AVX2 double sum_squared_diff_avx2(const double* a, const double* b,
                                        std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    const __m256d d1 =
        _mm256_sub_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4));
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(d0, d0));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(d1, d1));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, _mm256_add_pd(acc0, acc1));
  const double head = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  return head + detail::sum_squared_diff_scalar(a + i, b + i, n - i);
}

#undef DOGMA_AVX2

constexpr KernelTable kAvx2{Isa::kAvx2, &fuse_avx2, &pignistic_avx2,
                            &sum_squared_diff_avx2};

}  // namespace

const KernelTable* avx2_kernels() {
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") != 0;
  }();
  return supported ? &kAvx2 : nullptr;
}

#else

const KernelTable* avx2_kernels() { return nullptr; }

#endif

}  // namespace dogma::simd
