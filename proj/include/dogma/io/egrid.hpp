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

#include <cstdint>
#include <span>
#include <vector>

#include "dogma/evidential/grid.hpp"
#include "dogma/io/files.hpp"

namespace dogma::io {

/// In-memory form of an "EGRID v1" dump: a channel-major stack of row-major
/// float planes.
///
/// On disk: magic "EGRD", u32 version (1), u32 height, u32 width,
/// u32 channels, u64 frame_index, f64 timestamp, then channels*height*width
/// f32 values. All integers and floats little-endian.
struct GridTensor {
  std::uint32_t channels = 0;
  std::uint32_t height = 0;
  std::uint32_t width = 0;
  std::uint64_t frame_index = 0;
  double timestamp = 0.0;
  std::vector<float> values;

  std::size_t plane_size() const { return static_cast<std::size_t>(height) * width; }
  std::span<const float> channel(std::uint32_t c) const {
    return std::span(values).subspan(c * plane_size(), plane_size());
  }
  std::span<float> channel(std::uint32_t c) {
    return std::span(values).subspan(c * plane_size(), plane_size());
  }

  friend bool operator==(const GridTensor&, const GridTensor&) = default;
};

inline constexpr std::uint32_t kEgridVersion = 1;

Bytes encode_egrid(const GridTensor& t);
GridTensor decode_egrid(std::span<const std::byte> data);

void write_egrid(const fs::path& path, const GridTensor& t);
GridTensor read_egrid(const fs::path& path);

/// Evidential grid as a two-channel tensor [m_occ, m_free].
GridTensor to_tensor(const EvidentialGrid& grid);

/// Inverse of to_tensor; the origin is not part of the format and is set to
/// `origin`.
EvidentialGrid evidential_from_tensor(const GridTensor& t, const GridSpec& spec,
                                      Vec2 origin = {});

/// Binary (P5) PGM of probabilities in [0, 1]: 0 is free, 255 occupied, an
/// unknown cell at 0.5 maps to 127.
Bytes encode_pgm(std::span<const double> probability, std::uint32_t width,
                 std::uint32_t height);

}  // namespace dogma::io
