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
#include <optional>
#include <stdexcept>
#include <string>

namespace dogma {

enum class ErrorCode {
  kInvalidArgument,
  kTotalConflict,
  kSpecMismatch,
  kTrailingBytes,
  kNonFinite,
  kDegenerateWeights,
  kEmptySequence,
  kBadSequenceLength,
  kConfig,
  kFormat,
  kIo,
};

const char* to_string(ErrorCode code);

struct CellIndex {
  int row = 0;
  int col = 0;
  friend bool operator==(const CellIndex&, const CellIndex&) = default;
};

// Every failure raised by the library carries a code so callers (the CLI in
// particular) can map it onto an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        std::optional<CellIndex> cell = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  const std::optional<CellIndex>& cell() const noexcept { return cell_; }
  /// what() without the code prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
  std::optional<CellIndex> cell_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace dogma
