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

#include "dogma/io/egrid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dogma::io {

namespace {
constexpr std::byte kMagic[4] = {std::byte{'E'}, std::byte{'G'}, std::byte{'R'},
                                 std::byte{'D'}};
}

Bytes encode_egrid(const GridTensor& t) {
  if (t.values.size() != t.channels * t.plane_size()) {
    fail(ErrorCode::kInvalidArgument, "EGRID tensor size does not match its shape");
  }
  Bytes out;
  out.reserve(36 + 4 * t.values.size());
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  put_le(out, kEgridVersion);
  put_le(out, t.height);
  put_le(out, t.width);
  put_le(out, t.channels);
  put_le(out, t.frame_index);
  put_le(out, t.timestamp);
  for (float v : t.values) put_le(out, v);
  return out;
}

GridTensor decode_egrid(std::span<const std::byte> data) {
  LeReader in(data);
  const auto magic = in.take(4);
  if (!std::equal(magic.begin(), magic.end(), std::begin(kMagic))) {
    fail(ErrorCode::kFormat, "not an EGRID file (bad magic)");
  }
  const auto version = in.get<std::uint32_t>();
  if (version != kEgridVersion) {
    fail(ErrorCode::kFormat, "unsupported EGRID version " + std::to_string(version));
  }
  GridTensor t;
  t.height = in.get<std::uint32_t>();
  t.width = in.get<std::uint32_t>();
  t.channels = in.get<std::uint32_t>();
  t.frame_index = in.get<std::uint64_t>();
  t.timestamp = in.get<double>();
  const std::size_t count = static_cast<std::size_t>(t.channels) * t.plane_size();
  if (in.remaining() != 4 * count) {
    fail(ErrorCode::kFormat, "EGRID payload is " + std::to_string(in.remaining()) +
                                 " bytes, expected " + std::to_string(4 * count));
  }
  t.values.resize(count);
  for (auto& v : t.values) v = in.get<float>();
  return t;
}

void write_egrid(const fs::path& path, const GridTensor& t) {
  write_bytes(path, encode_egrid(t));
}

GridTensor read_egrid(const fs::path& path) {
  try {
    return decode_egrid(read_bytes(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIo) throw;
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

GridTensor to_tensor(const EvidentialGrid& grid) {
  GridTensor t;
  t.channels = 2;
  t.height = t.width = static_cast<std::uint32_t>(grid.spec.cells_per_side);
  t.frame_index = static_cast<std::uint64_t>(grid.frame_index);
  t.timestamp = grid.timestamp;
  t.values.resize(2 * t.plane_size());
  auto occ = t.channel(0);
  auto fr = t.channel(1);
  for (std::size_t i = 0; i < grid.cells.size(); ++i) {
    occ[i] = static_cast<float>(grid.cells[i].occ);
    fr[i] = static_cast<float>(grid.cells[i].free);
  }
  return t;
}

EvidentialGrid evidential_from_tensor(const GridTensor& t, const GridSpec& spec,
                                      Vec2 origin) {
  if (t.channels != 2 || t.height != static_cast<std::uint32_t>(spec.cells_per_side) ||
      t.width != t.height) {
    fail(ErrorCode::kSpecMismatch, "tensor shape is not a two-channel evidential grid");
  }
  EvidentialGrid g = vacuous_grid(spec, origin);
  g.frame_index = static_cast<std::int64_t>(t.frame_index);
  g.timestamp = t.timestamp;
  const auto occ = t.channel(0);
  const auto fr = t.channel(1);
  for (std::size_t i = 0; i < g.cells.size(); ++i) g.cells[i] = {occ[i], fr[i]};
  return g;
}

Bytes encode_pgm(std::span<const double> probability, std::uint32_t width,
                 std::uint32_t height) {
  if (probability.size() != static_cast<std::size_t>(width) * height) {
    fail(ErrorCode::kInvalidArgument, "PGM size does not match its shape");
  }
  const std::string header =
      "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  Bytes out;
  out.reserve(header.size() + probability.size());
  for (char c : header) out.push_back(static_cast<std::byte>(c));
  for (double p : probability) {
    const double scaled = std::floor(std::clamp(p, 0.0, 1.0) * 255.0);
    out.push_back(static_cast<std::byte>(static_cast<unsigned>(scaled)));
  }
  return out;
}

}  // namespace dogma::io
