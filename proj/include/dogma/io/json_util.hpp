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

#include <json.hpp>
#include <set>
#include <string>
#include <string_view>

#include "dogma/common/error.hpp"

namespace dogma::io {

using Json = nlohmann::json;

/// Parses JSON text; syntax errors become Error(kConfig) with the source
/// name, line and column.
Json parse_json(std::string_view text, std::string_view source);

/// Reads fields from a JSON object and rejects keys nobody asked for.
///
///   StrictObject obj(j, "filter");
///   cfg.alpha = obj.get("alpha", cfg.alpha);
///   obj.finish();   // throws on unknown keys
class StrictObject {
 public:
  StrictObject(const Json& j, std::string context);

  bool has(const std::string& key) const { return json_.contains(key); }

  template <class T>
  T get(const std::string& key, const T& fallback) {
    seen_.insert(key);
    if (!json_.contains(key)) return fallback;
    return convert<T>(key);
  }

  template <class T>
  T require(const std::string& key) {
    seen_.insert(key);
    if (!json_.contains(key)) fail(ErrorCode::kConfig, context_ + ": missing key '" + key + "'");
    return convert<T>(key);
  }

  const Json& raw(const std::string& key) {
    seen_.insert(key);
    return json_.at(key);
  }

  std::string path(const std::string& key) const { return context_ + "." + key; }

  void finish() const;

 private:
  template <class T>
  T convert(const std::string& key) const {
    try {
      return json_.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::kConfig, context_ + "." + key + ": " + e.what());
    }
  }

  const Json& json_;
  std::string context_;
  std::set<std::string> seen_;
};

}  // namespace dogma::io
