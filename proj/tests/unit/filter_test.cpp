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

#include "dogma/cli/pipeline.hpp"
#include "dogma/common/error.hpp"
#include "dogma/filter/filter.hpp"

namespace dogma {
namespace {

struct SimRun {
  std::vector<EvidentialGrid> frames;
  std::vector<Pose2> poses;
  std::vector<cli::SimFrame> sim;
};

SimRun make_run(const std::string& scene, int frames, const cli::PipelineConfig& cfg) {
  const sim::SceneConfig sc = sim::load_scene_config(std::string(DOGMA_SCENE_DIR) + "/" + scene);
  SimRun r;
  r.sim = cli::simulate(sc, cfg.grid, frames);
  for (const auto& f : r.sim) {
    r.frames.push_back(cli::measure(f.scan.cloud, cfg));
    r.poses.push_back(f.state.ego);
  }
  return r;
}

cli::PipelineConfig small_config() {
  cli::PipelineConfig cfg;
  cfg.filter.particle_count = 5000;
  return cfg;
}

TEST(RunFilter, EmptyAndMismatchedInput) {
  try {
    run_filter({}, {}, FilterConfig{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptySequence);
  }
  const std::vector<EvidentialGrid> one{vacuous_grid(GridSpec{})};
  try {
    run_filter(one, {}, FilterConfig{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
}

TEST(RunFilter, InvariantsPerFrame) {
  const auto cfg = small_config();
  const SimRun r = make_run("crossing_vehicle.json", 12, cfg);
  GridFilter filter(cfg.filter);
  for (std::size_t k = 0; k < r.frames.size(); ++k) {
    const FilterStep st = filter.step(r.frames[k], {});
    ASSERT_EQ(filter.particles().size(), 5000u) << k;
    const auto& snap = st.snapshot;
    const auto sums = cell_weight_sums(snap.particles, cfg.grid, snap.posterior.origin);
    for (std::size_t c = 0; c < sums.size(); ++c) {
      EXPECT_LE(sums[c], 1.0 + 1e-9);
      if (sums[c] > 0) {
        EXPECT_NEAR(sums[c], snap.posterior.cells[c].occ, 1e-9) << k << " " << c;
      }
    }
    for (const CellStats& s : st.stats) {
      if (!s.valid) continue;
      EXPECT_GE(s.pxx, -1e-9);
      EXPECT_GE(s.pyy, -1e-9);
      EXPECT_GE(s.pxx * s.pyy - s.pxy * s.pxy, -1e-9);
    }
    const auto& d = st.dogma;
    for (int ch = 0; ch < d.channels(); ++ch) {
      const bool velocity = ch >= d.channels() - 2;
      for (double v : d.channel(ch)) {
        EXPECT_GE(v, velocity ? -1.0 : 0.0);
        EXPECT_LE(v, 1.0);
      }
    }
    for (std::size_t c = 0; c < cfg.grid.cell_count(); ++c) {
      const bool gated = snap.dynamic_mask[c] && snap.posterior.cells[c].occ >= cfg.filter.m_occ_min;
      if (!gated) {
        EXPECT_EQ(d.channel(2)[c], 0.0);
        EXPECT_EQ(d.channel(3)[c], 0.0);
      }
    }
  }
}

TEST(RunFilter, BitReproducible) {
  const auto cfg = small_config();
  const SimRun r = make_run("crossing_vehicle.json", 8, cfg);
  const auto a = run_filter(r.frames, r.poses, cfg.filter);
  const auto b = run_filter(r.frames, r.poses, cfg.filter);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].dogma.data, b[k].dogma.data);
    EXPECT_EQ(a[k].snapshot.particles.particles, b[k].snapshot.particles.particles);
  }
}

TEST(RunFilter, SingleFrameMostlyStatic) {
  const auto cfg = small_config();
  const SimRun r = make_run("static_corridor.json", 1, cfg);
  const auto steps = run_filter(r.frames, r.poses, cfg.filter);
  ASSERT_EQ(steps.size(), 1u);
  const auto& d = steps[0].dogma;
  double occupied = 0, dynamic = 0;
  for (std::size_t c = 0; c < cfg.grid.cell_count(); ++c) {
    if (r.frames[0].cells[c].occ <= 0) continue;
    ++occupied;
    dynamic += (d.channel(2)[c] != 0 || d.channel(3)[c] != 0) ? 1 : 0;
  }
  ASSERT_GT(occupied, 50);
  EXPECT_LT(dynamic / occupied, 0.05);
}

TEST(RunFilter, ModesOnlyChangePackaging) {
  auto cfg = small_config();
  const SimRun r = make_run("crossing_vehicle.json", 6, cfg);
  const auto dst = run_filter(r.frames, r.poses, cfg.filter);
  cfg.filter.mode = DogmaMode::kProbabilistic;
  const auto prob = run_filter(r.frames, r.poses, cfg.filter);
  for (std::size_t k = 0; k < dst.size(); ++k) {
    const auto& a = dst[k].dogma;
    const auto& b = prob[k].dogma;
    for (std::size_t c = 0; c < cfg.grid.cell_count(); ++c) {
      ASSERT_NEAR(b.channel(0)[c], pignistic({a.channel(0)[c], a.channel(1)[c]}), 1e-12);
      ASSERT_EQ(b.channel(1)[c], a.channel(2)[c]);
    }
  }
}

TEST(RunFilter, FrameErrorsNameTheFrame) {
  const GridSpec spec{8, 4.0};
  std::vector<EvidentialGrid> frames{vacuous_grid(spec), vacuous_grid(GridSpec{})};
  const std::vector<Pose2> poses(2);
  FilterConfig cfg;
  cfg.particle_count = 100;
  try {
    run_filter(frames, poses, cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSpecMismatch);
    EXPECT_EQ(std::string(e.message()).rfind("frame 1: ", 0), 0u) << e.what();
  }
}

TEST(EgoVelocities, Differences) {
  const std::vector<Pose2> poses{{{0, 0}, 0}, {{0.2, 0}, 0}, {{0.4, 0.1}, 0}};
  const auto v = ego_velocities(poses, 0.1);
  ASSERT_EQ(v.size(), 3u);
  EXPECT_NEAR(v[0].x, 2.0, 1e-12);
  EXPECT_NEAR(v[1].x, 2.0, 1e-12);
  EXPECT_NEAR(v[2].y, 1.0, 1e-12);
  EXPECT_EQ(ego_velocities(std::vector<Pose2>{{}}, 0.1)[0], (Vec2{}));
}

TEST(FilterConfig, Validation) {
  FilterConfig c;
  EXPECT_NO_THROW(c.validate());
  c.alpha = 1.5;
  EXPECT_THROW(c.validate(), Error);
  c = {};
  c.particle_count = 0;
  EXPECT_THROW(c.validate(), Error);
  c = {};
  c.p_survive = 1.2;
  EXPECT_THROW(c.validate(), Error);
  EXPECT_THROW(filter_config_from_json(io::Json{{"nu", 5}}, "f"), Error);
  const FilterConfig j = filter_config_from_json(io::Json{{"mode", "prob"}, {"seed", 7}}, "f");
  EXPECT_EQ(j.mode, DogmaMode::kProbabilistic);
  EXPECT_EQ(j.seed, 7u);
  c = {};
  c.particle_count = 1234;
  EXPECT_EQ(filter_config_from_json(to_json(c), "f").particle_count, 1234);
}

}  // namespace
}  // namespace dogma
