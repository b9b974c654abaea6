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

#include <gtest/gtest.h>

#include <cstring>
#include <random>

#include "dogma/simd/kernels.hpp"

namespace dogma::simd {
namespace {

std::vector<MassCell> random_cells(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<MassCell> out(n);
  for (MassCell& c : out) {
    const double a = u(rng), b = u(rng);
    c = {std::min(a, b), std::max(a, b) - std::min(a, b)};
  }
  return out;
}

bool same_bits(const MassCell& a, const MassCell& b) {
  return std::memcmp(&a, &b, sizeof(MassCell)) == 0;
}

class KernelEquivalence : public ::testing::TestWithParam<std::size_t> {};

TEST_P(KernelEquivalence, FuseBitIdentical) {
  const std::size_t n = GetParam();
  const auto prior = random_cells(n, 10 + n), meas = random_cells(n, 20 + n);
  std::vector<MassCell> ref(n);
  ASSERT_EQ(scalar_kernels().fuse(prior.data(), meas.data(), 0.9, ref.data(), n), n);
  for (const KernelTable* k : available_kernels()) {
    std::vector<MassCell> out(n);
    ASSERT_EQ(k->fuse(prior.data(), meas.data(), 0.9, out.data(), n), n) << to_string(k->isa);
    for (std::size_t i = 0; i < n; ++i) {
      ASSERT_TRUE(same_bits(out[i], ref[i])) << to_string(k->isa) << " cell " << i;
    }
  }
}

TEST_P(KernelEquivalence, PignisticBitIdentical) {
  const std::size_t n = GetParam();
  const auto cells = random_cells(n, 30 + n);
  std::vector<double> ref(n);
  scalar_kernels().pignistic(cells.data(), ref.data(), n);
  for (const KernelTable* k : available_kernels()) {
    std::vector<double> out(n);
    k->pignistic(cells.data(), out.data(), n);
    EXPECT_EQ(std::memcmp(out.data(), ref.data(), n * sizeof(double)), 0) << to_string(k->isa);
  }
}

TEST_P(KernelEquivalence, SumSquaredDiffAgrees) {
  const std::size_t n = GetParam();
  std::mt19937_64 rng(40 + n);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = u(rng), b[i] = u(rng);
  const double ref = scalar_kernels().sum_squared_diff(a.data(), b.data(), n);
  for (const KernelTable* k : available_kernels()) {
    EXPECT_NEAR(k->sum_squared_diff(a.data(), b.data(), n), ref, 1e-12 * (1.0 + ref))
        << to_string(k->isa);
  }
}

INSTANTIATE_TEST_SUITE_P(Sizes, KernelEquivalence,
                         ::testing::Values(0, 1, 2, 3, 5, 7, 16, 17, 1023, 16384));

TEST(Kernels, ConflictStopsAtSameIndex) {
  auto prior = random_cells(37, 1), meas = random_cells(37, 2);
  prior[21] = MassCell::occupied(1.0);
  meas[21] = MassCell::freespace(1.0);
  for (const KernelTable* k : available_kernels()) {
    std::vector<MassCell> out(37);
    EXPECT_EQ(k->fuse(prior.data(), meas.data(), 1.0, out.data(), 37), 21u) << to_string(k->isa);
  }
}

TEST(Kernels, ScalarAlwaysAvailableAndFirst) {
  const auto all = available_kernels();
  ASSERT_FALSE(all.empty());
  EXPECT_EQ(all.front()->isa, Isa::kScalar);
  bool active_listed = false;
  for (const KernelTable* k : all) active_listed = active_listed || k == &active_kernels();
  EXPECT_TRUE(active_listed);
}

}  // namespace
}  // namespace dogma::simd
