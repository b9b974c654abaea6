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

#include <gtest/gtest.h>

#include <random>

#include "dogma/common/error.hpp"
#include "dogma/io/egrid.hpp"
#include "dogma/io/files.hpp"
#include "dogma/io/json_util.hpp"
#include "scratch_dir.hpp"

namespace dogma::io {
namespace {

GridTensor sample_tensor() {
  GridTensor t;
  t.channels = 2;
  t.height = 3;
  t.width = 4;
  t.frame_index = 17;
  t.timestamp = 1.7;
  for (int i = 0; i < 24; ++i) t.values.push_back(static_cast<float>(i) * 0.25F);
  return t;
}

TEST(Egrid, HeaderLayout) {
  const Bytes b = encode_egrid(sample_tensor());
  ASSERT_EQ(b.size(), 4u + 4 * 4 + 8 + 8 + 24 * 4);
  EXPECT_EQ(static_cast<char>(b[0]), 'E');
  EXPECT_EQ(static_cast<char>(b[1]), 'G');
  EXPECT_EQ(static_cast<char>(b[2]), 'R');
  EXPECT_EQ(static_cast<char>(b[3]), 'D');
  EXPECT_EQ(std::to_integer<int>(b[4]), 1);  // version, little-endian
  EXPECT_EQ(std::to_integer<int>(b[8]), 3);  // height
  EXPECT_EQ(std::to_integer<int>(b[12]), 4);  // width
  EXPECT_EQ(std::to_integer<int>(b[16]), 2);  // channels
  EXPECT_EQ(std::to_integer<int>(b[20]), 17);  // frame index
}

TEST(Egrid, RoundTrip) {
  const GridTensor t = sample_tensor();
  EXPECT_EQ(decode_egrid(encode_egrid(t)), t);
}

TEST(Egrid, RejectsBadMagicAndTruncation) {
  Bytes b = encode_egrid(sample_tensor());
  Bytes truncated(b.begin(), b.end() - 1);
  EXPECT_THROW(decode_egrid(truncated), Error);
  b.push_back(std::byte{0});
  EXPECT_THROW(decode_egrid(b), Error);
  b.pop_back();
  b[0] = std::byte{'X'};
  EXPECT_THROW(decode_egrid(b), Error);
}

TEST(Egrid, EvidentialChannels) {
  const GridSpec s{4, 2.0};
  EvidentialGrid g = vacuous_grid(s);
  g.at(1, 2) = {0.5, 0.25};
  const GridTensor t = to_tensor(g);
  EXPECT_EQ(t.channels, 2u);
  EXPECT_EQ(t.channel(0)[s.flat(1, 2)], 0.5F);
  EXPECT_EQ(t.channel(1)[s.flat(1, 2)], 0.25F);
  EXPECT_EQ(evidential_from_tensor(t, s).cells, g.cells);
}

TEST(Pgm, UnknownIsMidGray) {
  const std::vector<double> p{0.0, 0.5, 1.0, 0.25};
  const Bytes b = encode_pgm(p, 2, 2);
  const std::string header = "P5\n2 2\n255\n";
  ASSERT_EQ(b.size(), header.size() + 4);
  EXPECT_EQ(std::string(reinterpret_cast<const char*>(b.data()), header.size()), header);
  EXPECT_EQ(std::to_integer<int>(b[header.size() + 0]), 0);
  EXPECT_EQ(std::to_integer<int>(b[header.size() + 1]), 127);
  EXPECT_EQ(std::to_integer<int>(b[header.size() + 2]), 255);
}

TEST(Files, FrameNamesAndListing) {
  EXPECT_EQ(frame_file_name(42, ".bin"), "0000000042.bin");
  testing_support::ScratchDir dir("files");
  for (int k : {3, 1, 2}) write_text(dir / frame_file_name(k, ".bin"), "x");
  write_text(dir / "notes.bin", "x");
  write_text(dir / "0000000004.txt", "x");
  const auto files = list_frames(dir.path(), ".bin");
  ASSERT_EQ(files.size(), 3u);
  EXPECT_EQ(files[0].filename(), "0000000001.bin");
  EXPECT_EQ(files[2].filename(), "0000000003.bin");
}

TEST(Files, MissingFileNamesPath) {
  try {
    read_bytes("/nonexistent/dir/file.bin");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
    EXPECT_NE(std::string(e.what()).find("/nonexistent/dir/file.bin"), std::string::npos);
  }
}

TEST(Json, SyntaxErrorHasLineAndColumn) {
  try {
    parse_json("{\n  \"a\": ,\n}", "cfg.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfig);
    EXPECT_NE(std::string(e.what()).find("cfg.json:2:"), std::string::npos) << e.what();
  }
}

TEST(Json, StrictObjectRejectsUnknownKeys) {
  const Json j = parse_json(R"({"a": 1, "b": 2})", "t");
  StrictObject o(j, "t");
  EXPECT_EQ(o.get("a", 0), 1);
  EXPECT_THROW(o.finish(), Error);
}

}  // namespace
}  // namespace dogma::io
