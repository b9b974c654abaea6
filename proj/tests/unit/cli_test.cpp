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

#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dogma/cli/commands.hpp"
#include "dogma/cli/pipeline.hpp"
#include "dogma/io/files.hpp"
#include "scratch_dir.hpp"

namespace {

namespace fs = std::filesystem;
using dogma::ErrorCode;
using testing_support::ScratchDir;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "dogma");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = dogma::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spit(const fs::path& p, const std::string& s) {
  std::ofstream(p, std::ios::binary) << s;
}

// Relative path -> contents for every regular file under dir.
std::map<std::string, std::string> tree(const fs::path& dir) {
  std::map<std::string, std::string> m;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) m[fs::relative(e.path(), dir).string()] = slurp(e.path());
  }
  return m;
}

std::size_t count_ext(const fs::path& dir, const std::string& ext) {
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(dir)) n += e.path().extension() == ext;
  return n;
}

const std::string kScene = std::string(DOGMA_SCENE_DIR) + "/crossing_vehicle.json";

// Small particle budget keeps the pipeline runs quick.
std::string small_config(const fs::path& frames, const fs::path& out) {
  return R"({"filter": {"particle_count": 4000}, "seed": 9, "paths": {"frames": ")" +
         frames.string() + R"(", "out": ")" + out.string() + R"("}})";
}

TEST(PipelineConfig, DefaultFileMatchesBuiltInDefaults) {
  const auto cfg = dogma::cli::load_pipeline_config(fs::path(DOGMA_CONFIG_DIR) / "default.json");
  EXPECT_EQ(dogma::cli::config_hash(cfg), dogma::cli::config_hash(dogma::cli::PipelineConfig{}));
}

TEST(PipelineConfig, UnknownKeyIsRejected) {
  try {
    dogma::cli::parse_pipeline_config(R"({"grid": {"cells": 64}})", "x.json");
    FAIL();
  } catch (const dogma::Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfig);
    EXPECT_NE(std::string(e.what()).find("cells"), std::string::npos);
  }
}

TEST(PipelineConfig, OutOfRangeValuesAreRejected) {
  for (const char* text : {R"({"measurement": {"m_occ": 1.5}})",
                           R"({"ground": {"iterations": 0}})",
                           R"({"filter": {"particle_count": 0}})",
                           R"({"mode": "fuzzy"})"}) {
    EXPECT_THROW(dogma::cli::parse_pipeline_config(text, "x.json"), dogma::Error) << text;
  }
}

TEST(PipelineConfig, HashTracksEveryField) {
  dogma::cli::PipelineConfig a, b;
  EXPECT_EQ(dogma::cli::config_hash(a), dogma::cli::config_hash(b));
  EXPECT_EQ(dogma::cli::config_hash(a).size(), 64u);
  b.filter.q_vel += 1e-9;
  EXPECT_NE(dogma::cli::config_hash(a), dogma::cli::config_hash(b));
  b = a;
  b.ground.ransac.max_below_fraction = 0.1;
  EXPECT_NE(dogma::cli::config_hash(a), dogma::cli::config_hash(b));
}

TEST(PipelineConfig, JsonRoundTrip) {
  dogma::cli::PipelineConfig a;
  a.filter.particle_count = 1234;
  a.filter.mode = dogma::DogmaMode::kProbabilistic;
  a.ground.enabled = false;
  const auto b = dogma::cli::parse_pipeline_config(dogma::cli::to_json(a).dump(), "rt");
  EXPECT_EQ(dogma::cli::config_hash(a), dogma::cli::config_hash(b));
}

TEST(Cli, SimulateWritesScansAndTruth) {
  ScratchDir d("cli_sim");
  const auto r = run_cli({"simulate", "--config", kScene, "--out", (d / "f").string(), "--frames", "60"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count_ext(d / "f", ".bin"), 60u);
  EXPECT_EQ(count_ext(d / "f" / "truth", ".egrid"), 60u);
  EXPECT_TRUE(fs::exists(d / "f" / "poses.csv"));
}

TEST(Cli, SimulateIsDeterministic) {
  ScratchDir d("cli_det");
  for (const char* sub : {"a", "b"}) {
    ASSERT_EQ(run_cli({"simulate", "--config", kScene, "--out", (d / sub).string(), "--frames",
                       "5", "--seed", "17"})
                  .code,
              0);
  }
  EXPECT_EQ(tree(d / "a"), tree(d / "b"));
  ASSERT_EQ(run_cli({"simulate", "--config", kScene, "--out", (d / "c").string(), "--frames", "5",
                     "--seed", "18"})
                .code,
            0);
  EXPECT_NE(tree(d / "a"), tree(d / "c"));
}

TEST(Cli, MalformedJsonReportsPosition) {
  ScratchDir d("cli_bad");
  spit(d / "bad.json", "{\n  \"seed\": 1,\n  oops\n}\n");
  const auto r = run_cli({"simulate", "--config", (d / "bad.json").string(), "--out",
                          (d / "o").string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("bad.json"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find(":3:"), std::string::npos) << r.err;
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({"simulate", "--out", "/tmp/x"}).code, 2);
  EXPECT_EQ(run_cli({"pipeline", "--mode", "fuzzy"}).code, 2);
  EXPECT_EQ(run_cli({"--version"}).code, 0);
}

class CliRun : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new ScratchDir("cli_run");
    frames_ = dir_->path() / "frames";
    ASSERT_EQ(run_cli({"simulate", "--config", kScene, "--out", frames_.string(), "--frames", "140"})
                  .code,
              0);
    spit(dir_->path() / "pipe.json", small_config(frames_, dir_->path() / "run"));
    const auto r = run_cli({"pipeline", "--config", (dir_->path() / "pipe.json").string()});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  static void TearDownTestSuite() { delete dir_; }

  static fs::path run_dir() { return dir_->path() / "run"; }

  static ScratchDir* dir_;
  static fs::path frames_;
};

ScratchDir* CliRun::dir_ = nullptr;
fs::path CliRun::frames_;

TEST_F(CliRun, PipelineWritesFramesAndManifest) {
  EXPECT_EQ(count_ext(run_dir() / "dogma", ".egrid"), 140u);
  EXPECT_EQ(count_ext(run_dir() / "state", ".egrid"), 140u);
  const auto m = dogma::cli::read_manifest(run_dir());
  EXPECT_EQ(m.frame_count, 140);
  EXPECT_EQ(m.frame_indices.size(), 140u);
  EXPECT_EQ(m.config.filter.particle_count, 4000);
  EXPECT_EQ(m.config_hash, dogma::cli::config_hash(m.config));
}

TEST_F(CliRun, RerunIsByteIdentical) {
  ScratchDir d("cli_rerun");
  dogma::cli::PipelineOptions opt;
  opt.config = dir_->path() / "pipe.json";
  opt.out = d / "run";
  ASSERT_EQ(dogma::cli::cmd_pipeline(opt), 140);
  EXPECT_EQ(tree(run_dir()), tree(d / "run"));
}

TEST_F(CliRun, PipelineLeavesInputsAlone) {
  const auto before = tree(frames_);
  ScratchDir d("cli_touch");
  dogma::cli::PipelineOptions opt;
  opt.config = dir_->path() / "pipe.json";
  opt.out = d / "run";
  ASSERT_EQ(dogma::cli::cmd_pipeline(opt), 140);
  EXPECT_EQ(tree(frames_), before);
  std::set<std::string> top;
  for (const auto& e : fs::directory_iterator(d.path())) top.insert(e.path().filename().string());
  EXPECT_EQ(top, std::set<std::string>{"run"});
}

TEST_F(CliRun, EvalProducesOneRowPerPredictorAndStep) {
  ScratchDir d("cli_eval");
  const auto r = run_cli({"eval", "--frames", run_dir().string(), "--out", d.path().string()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream csv(slurp(d / "metrics.csv"));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "step,seconds,predictor,mean_mse,stderr");
  int rows = 0;
  while (std::getline(csv, line)) rows += !line.empty();
  EXPECT_EQ(rows, 30);
  EXPECT_TRUE(fs::exists(d / "mse.svg"));

  ScratchDir e("cli_eval2");
  ASSERT_EQ(run_cli({"eval", "--frames", run_dir().string(), "--out", e.path().string()}).code, 0);
  EXPECT_EQ(slurp(d / "metrics.csv"), slurp(e / "metrics.csv"));
}

TEST_F(CliRun, StoredPredictionsScoreLikeLiveOnes) {
  ScratchDir d("cli_pred");
  ASSERT_EQ(run_cli({"predict", "--frames", run_dir().string(), "--predictor", "static",
                     "--predictor", "pf", "--out", (d / "p").string()})
                .code,
            0);
  dogma::cli::EvalOptions live;
  live.run_dir = run_dir();
  live.out = d / "live";
  live.svg = false;
  dogma::cli::EvalOptions stored = live;
  stored.predictions = d / "p";
  stored.out = d / "stored";
  const auto a = dogma::cli::cmd_eval(live);
  const auto b = dogma::cli::cmd_eval(stored);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].predictor, b.rows[i].predictor);
    EXPECT_NEAR(a.rows[i].mean_mse, b.rows[i].mean_mse, 1e-5);
  }
}

TEST_F(CliRun, ExternalTargets) {
  ScratchDir d("cli_tgt");
  const auto r = run_cli({"eval", "--frames", run_dir().string(), "--targets",
                          (frames_ / "truth").string(), "--format", "csv", "--out",
                          d.path().string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(d / "metrics.csv"));
  EXPECT_FALSE(fs::exists(d / "mse.svg"));
}

TEST_F(CliRun, ExportWritesTensorFile) {
  ScratchDir d("cli_exp");
  const auto r = run_cli({"export", "--frames", run_dir().string(), "--out", d.path().string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_GT(fs::file_size(d / "sequences.f32"), 0u);
}

TEST(CliErrors, EmptyDirectoryIsUsageError) {
  ScratchDir d("cli_empty");
  fs::create_directories(d / "frames");
  EXPECT_EQ(run_cli({"pipeline", "--frames", (d / "frames").string(), "--out", (d / "o").string()})
                .code,
            2);
  EXPECT_EQ(run_cli({"eval", "--frames", (d / "frames").string(), "--out", (d / "o").string()})
                .code,
            2);
}

TEST(CliErrors, MissingPosesNamesThePath) {
  ScratchDir d("cli_nopose");
  ASSERT_EQ(run_cli({"simulate", "--config", kScene, "--out", (d / "f").string(), "--frames", "3"})
                .code,
            0);
  fs::remove(d / "f" / "poses.csv");
  const auto r =
      run_cli({"pipeline", "--frames", (d / "f").string(), "--out", (d / "o").string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("poses.csv"), std::string::npos) << r.err;
}

TEST(CliErrors, CorruptScanIsDataError) {
  ScratchDir d("cli_corrupt");
  ASSERT_EQ(run_cli({"simulate", "--config", kScene, "--out", (d / "f").string(), "--frames", "3"})
                .code,
            0);
  std::ofstream(d / "f" / dogma::io::frame_file_name(1, ".bin"), std::ios::binary | std::ios::app)
      << "xyz";
  const auto r =
      run_cli({"pipeline", "--frames", (d / "f").string(), "--out", (d / "o").string()});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("frame"), std::string::npos) << r.err;
}

TEST(CliBinary, ExitCodesSurviveTheProcessBoundary) {
  const std::string bin = DOGMA_CLI_PATH;
  const auto status = [&](const std::string& args) {
    const int s = std::system((bin + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(s);
  };
  EXPECT_EQ(status("--version"), 0);
  EXPECT_EQ(status("frobnicate"), 2);
  ScratchDir d("cli_bin");
  EXPECT_EQ(status("simulate --config " + kScene + " --out " + (d / "f").string() + " --frames 2"),
            0);
  EXPECT_EQ(count_ext(d / "f", ".bin"), 2u);
}

}  // namespace
