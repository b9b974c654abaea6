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

#include "dogma/io/json_util.hpp"

#include <algorithm>

namespace dogma::io {

Json parse_json(std::string_view text, std::string_view source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character.
    const std::size_t offset = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail(ErrorCode::kConfig, std::string(source) + ":" + std::to_string(line) + ":" +
                                 std::to_string(col) + ": malformed JSON");
  }
}

StrictObject::StrictObject(const Json& j, std::string context)
    : json_(j), context_(std::move(context)) {
  if (!json_.is_object()) fail(ErrorCode::kConfig, context_ + ": expected a JSON object");
}

void StrictObject::finish() const {
  for (const auto& [key, value] : json_.items()) {
    if (!seen_.contains(key)) {
      fail(ErrorCode::kConfig, context_ + ": unknown key '" + key + "'");
    }
  }
}

}  // namespace dogma::io
