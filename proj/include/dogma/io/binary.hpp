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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "dogma/common/error.hpp"

namespace dogma::io {

using Bytes = std::vector<std::byte>;

namespace detail {

template <class U>
U byteswap(U v) {
  U out = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    out = static_cast<U>((out << 8) | ((v >> (8 * i)) & 0xFF));
  }
  return out;
}

template <class T>
using UintOf = std::conditional_t<sizeof(T) == 8, std::uint64_t,
                                  std::conditional_t<sizeof(T) == 4, std::uint32_t,
                                                     std::uint16_t>>;

}  // namespace detail

/// Appends `value` in little-endian byte order.
template <class T>
void put_le(Bytes& out, T value) {
  static_assert(std::is_arithmetic_v<T>);
  using U = detail::UintOf<T>;
  U raw = std::bit_cast<U>(value);
  if constexpr (std::endian::native == std::endian::big) raw = detail::byteswap(raw);
  const auto* p = reinterpret_cast<const std::byte*>(&raw);
  out.insert(out.end(), p, p + sizeof(U));
}

/// Sequential little-endian reader over a byte span.
class LeReader {
 public:
  explicit LeReader(std::span<const std::byte> data) : data_(data) {}

  template <class T>
  T get() {
    using U = detail::UintOf<T>;
    if (remaining() < sizeof(U)) {
      fail(ErrorCode::kFormat, "unexpected end of data at byte " + std::to_string(pos_));
    }
    U raw;
    std::memcpy(&raw, data_.data() + pos_, sizeof(U));
    if constexpr (std::endian::native == std::endian::big) raw = detail::byteswap(raw);
    pos_ += sizeof(U);
    return std::bit_cast<T>(raw);
  }

  std::span<const std::byte> take(std::size_t n) {
    if (remaining() < n) {
      fail(ErrorCode::kFormat, "unexpected end of data at byte " + std::to_string(pos_));
    }
    auto s = data_.subspan(pos_, n);
    pos_ += n;
    return s;
  }

  std::size_t remaining() const { return data_.size() - pos_; }
  std::size_t position() const { return pos_; }

 private:
  std::span<const std::byte> data_;
  std::size_t pos_ = 0;
};

}  // namespace dogma::io
