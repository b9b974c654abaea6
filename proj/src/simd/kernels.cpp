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

#include <cstdlib>
#include <string>

namespace dogma::simd {

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
    case Isa::kNeon: return "neon";
  }
  return "unknown";
}

std::vector<const KernelTable*> available_kernels() {
  std::vector<const KernelTable*> out{&scalar_kernels()};
  if (const auto* k = avx2_kernels()) out.push_back(k);
  if (const auto* k = neon_kernels()) out.push_back(k);
  return out;
}

const KernelTable& active_kernels() {
  static const KernelTable* const chosen = [] {
    const auto all = available_kernels();
    if (const char* env = std::getenv("DOGMA_SIMD")) {
      const std::string want(env);
      for (const auto* k : all) {
        if (to_string(k->isa) == want) return k;
      }
    }
    return all.back();
  }();
  return *chosen;
}

}  // namespace dogma::simd
