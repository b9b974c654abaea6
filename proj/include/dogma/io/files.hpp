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
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "dogma/io/binary.hpp"

namespace dogma::io {

namespace fs = std::filesystem;

/// Whole-file reads and writes; failures raise Error(kIo) naming the path.
Bytes read_bytes(const fs::path& path);
std::string read_text(const fs::path& path);
void write_bytes(const fs::path& path, std::span<const std::byte> data);
void write_text(const fs::path& path, std::string_view text);

/// "NNNNNNNNNN<ext>" with a ten digit zero-padded frame index.
std::string frame_file_name(std::int64_t index, std::string_view ext);

/// Files in `dir` named by frame_file_name with the given extension, sorted by
/// frame index. Other files are ignored.
std::vector<fs::path> list_frames(const fs::path& dir, std::string_view ext);

}  // namespace dogma::io
