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

#include "dogma/evidential/mass_cell.hpp"

// Scalar loops shared with the vector variants for their tails and for
// conflict fallback, so remainders are computed by the reference code.
namespace dogma::simd::detail {

std::size_t fuse_scalar(const MassCell* prior, const MassCell* meas,
                        double alpha, MassCell* out, std::size_t n);
void pignistic_scalar(const MassCell* cells, double* out, std::size_t n);
double sum_squared_diff_scalar(const double* a, const double* b, std::size_t n);

}  // namespace dogma::simd::detail
