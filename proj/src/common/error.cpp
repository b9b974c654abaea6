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

#include "dogma/common/error.hpp"

namespace dogma {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kTotalConflict: return "TotalConflict";
    case ErrorCode::kSpecMismatch: return "SpecMismatch";
    case ErrorCode::kTrailingBytes: return "TrailingBytes";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kDegenerateWeights: return "DegenerateWeights";
    case ErrorCode::kEmptySequence: return "EmptySequence";
    case ErrorCode::kBadSequenceLength: return "BadSequenceLength";
    case ErrorCode::kConfig: return "Config";
    case ErrorCode::kFormat: return "Format";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what,
             std::optional<CellIndex> cell)
    : std::runtime_error(std::string(to_string(code)) + ": " + what),
      code_(code),
      message_(what),
      cell_(cell) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace dogma
