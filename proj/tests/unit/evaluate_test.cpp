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

#include <algorithm>
#include <numeric>
#include <random>

#include "dogma/common/error.hpp"
#include "dogma/io/files.hpp"
#include "dogma/predict/evaluate.hpp"
#include "oracles.hpp"
#include "scratch_dir.hpp"
#include "sequences.hpp"

namespace dogma::predict {
namespace {

using testing_support::ScratchDir;

TEST(Moments, MatchesTwoPassAndMergesInAnyOrder) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(3.0, 2.0);
  std::vector<double> xs(1000);
  for (double& x : xs) x = n(rng);
  Moments all;
  for (double x : xs) all.add(x);
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  EXPECT_NEAR(all.mean, mean, 1e-12);
  EXPECT_NEAR(all.sample_variance(), ss / (xs.size() - 1), 1e-10);
  EXPECT_NEAR(all.standard_error(), std::sqrt(ss / (xs.size() - 1) / xs.size()), 1e-12);

  Moments a, b;
  for (std::size_t i = 0; i < xs.size(); ++i) (i < 300 ? a : b).add(xs[i]);
  Moments ab = a, ba = b;
  ab.merge(b);
  ba.merge(a);
  EXPECT_NEAR(ab.mean, all.mean, 1e-12);
  EXPECT_NEAR(ba.m2, all.m2, 1e-8);
  EXPECT_EQ(Moments{}.standard_error(), 0.0);
}

// Frames whose occupancy is a fixed random field: lets the tests control
// the targets exactly.
Sequence synthetic_sequence(const GridSpec& s, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Sequence seq;
  for (int t = 0; t < kSequenceLength; ++t) {
    DogmaFrame f;
    f.spec = s;
    f.mode = DogmaMode::kProbabilistic;
    f.frame_index = t;
    f.data.assign(3 * s.cell_count(), 0.0);
    for (double& v : f.channel(0)) v = u(rng);
    seq.frames.push_back(std::move(f));
  }
  return seq;
}

TEST(Evaluate, NoPredictorsNoRows) {
  const std::vector<Sequence> seqs{synthetic_sequence(GridSpec{4, 1.0}, 1)};
  EXPECT_TRUE(evaluate(seqs, {}, 0.1).rows.empty());
}

TEST(Evaluate, RejectsWrongLength) {
  std::vector<Sequence> seqs{synthetic_sequence(GridSpec{4, 1.0}, 1)};
  seqs[0].frames.pop_back();
  StaticPredictor sp;
  const Predictor* preds[] = {&sp};
  try {
    evaluate(seqs, preds, 0.1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBadSequenceLength);
  }
}

TEST(Evaluate, SchemaAndOracle) {
  const GridSpec s{8, 2.0};
  std::vector<Sequence> seqs;
  for (std::uint64_t i = 0; i < 7; ++i) seqs.push_back(synthetic_sequence(s, i));
  StaticPredictor sp;
  StaticPredictor other;  // same id twice is allowed; both get full curves
  const Predictor* preds[] = {&sp, &other};
  const MetricsTable t = evaluate(seqs, preds, 0.1);
  ASSERT_EQ(t.rows.size(), 30u);
  const std::string csv = to_csv(t);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "step,seconds,predictor,mean_mse,stderr");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 31);
  EXPECT_NE(csv.find("\n3,0.3,static,"), std::string::npos);

  // Oracle: per-step mean of hand-computed squared errors.
  for (int k = 1; k <= kHorizon; ++k) {
    std::vector<double> errs;
    for (const auto& seq : seqs) {
      const auto last = seq.frames[kSeedFrames - 1].channel(0);
      const auto tgt = seq.frames[kSeedFrames - 1 + k].channel(0);
      double e = 0;
      for (std::size_t c = 0; c < last.size(); ++c) e += (last[c] - tgt[c]) * (last[c] - tgt[c]);
      errs.push_back(e / last.size());
    }
    const double mean = std::accumulate(errs.begin(), errs.end(), 0.0) / errs.size();
    double ss = 0;
    for (double e : errs) ss += (e - mean) * (e - mean);
    EXPECT_NEAR(t.rows[k - 1].mean_mse, mean, 1e-12);
    EXPECT_NEAR(t.rows[k - 1].std_error, std::sqrt(ss / 6.0 / 7.0), 1e-12);
    EXPECT_EQ(t.rows[k - 1].step, k);
  }
}

TEST(Evaluate, InvariantToSequenceOrder) {
  const GridSpec s{8, 2.0};
  std::vector<Sequence> seqs;
  for (std::uint64_t i = 0; i < 9; ++i) seqs.push_back(synthetic_sequence(s, 50 + i));
  StaticPredictor sp;
  const Predictor* preds[] = {&sp};
  const MetricsTable a = evaluate(seqs, preds, 0.1);
  std::reverse(seqs.begin(), seqs.end());
  std::swap(seqs[1], seqs[5]);
  const MetricsTable b = evaluate(seqs, preds, 0.1);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_NEAR(a.rows[i].mean_mse, b.rows[i].mean_mse, 1e-15);
    EXPECT_NEAR(a.rows[i].std_error, b.rows[i].std_error, 1e-15);
  }
}

TEST(Evaluate, ExternalTargetsReplaceFrames) {
  const GridSpec s{4, 1.0};
  std::vector<Sequence> seqs{synthetic_sequence(s, 3)};
  const auto last = occupancy_of(seqs[0].frames[kSeedFrames - 1]);
  for (int k = 0; k < kHorizon; ++k) seqs[0].targets.push_back(last);
  StaticPredictor sp;
  const Predictor* preds[] = {&sp};
  for (const auto& r : evaluate(seqs, preds, 0.1).rows) EXPECT_EQ(r.mean_mse, 0.0);
  seqs[0].targets.pop_back();
  EXPECT_THROW(evaluate(seqs, preds, 0.1), Error);
}

// A static scene seen through independent single-scan grids: the static
// baseline only sees sensor noise, so the curve is flat. The per-step means
// need about a hundred sequences before their scatter drops under 10%.
TEST(Evaluate, StaticSceneNoiseFloorIsFlat) {
  const auto sc = testing_support::scene("static_corridor");
  cli::PipelineConfig cfg;
  std::vector<Sequence> seqs;
  for (int s = 0; s < 100; ++s) {
    auto scs = sc;
    scs.seed = sc.seed + static_cast<std::uint64_t>(s);
    cfg.filter.seed = static_cast<std::uint64_t>(s);
    const auto sim = cli::simulate(scs, cfg.grid, kSequenceLength);
    Sequence seq;
    const std::vector<CellStats> stats(cfg.grid.cell_count());
    const std::vector<std::uint8_t> mask(cfg.grid.cell_count(), 0);
    for (const auto& f : sim) {
      const EvidentialGrid g = cli::measure(f.scan.cloud, cfg);
      seq.frames.push_back(build_dogma(fuse_grid(vacuous_grid(cfg.grid, g.origin), g, 0.9), stats,
                                       mask, 20.0, 0.1, DogmaMode::kDst));
    }
    seqs.push_back(std::move(seq));
  }
  StaticPredictor sp;
  const Predictor* preds[] = {&sp};
  const auto curve = evaluate(seqs, preds, 0.1).curve("static");
  double lo = 1e9, hi = 0, sum = 0;
  for (const auto& r : curve) {
    lo = std::min(lo, r.mean_mse);
    hi = std::max(hi, r.mean_mse);
    sum += r.mean_mse;
  }
  const double mean = sum / curve.size();
  EXPECT_GT(mean, 0.0);
  EXPECT_LT(hi - lo, 0.1 * mean) << "min " << lo << " max " << hi;
}

TEST(Evaluate, MovingObjectErrorGrows) {
  cli::PipelineConfig cfg;
  cfg.filter.particle_count = 10000;
  const auto built =
      testing_support::filtered_sequences(testing_support::scene("crossing_vehicle"), cfg, 4, 20);
  std::vector<Sequence> seqs;
  for (const auto& b : built) seqs.push_back(b.seq);
  StaticPredictor sp;
  const Predictor* preds[] = {&sp};
  const auto curve = evaluate(seqs, preds, 0.1).curve("static");
  std::vector<double> means;
  for (const auto& r : curve) means.push_back(r.mean_mse);
  EXPECT_GT(oracle::spearman_with_steps(means), 0.95);
}

TEST(Svg, HasOneCurvePerPredictor) {
  const GridSpec s{4, 1.0};
  std::vector<Sequence> seqs{synthetic_sequence(s, 1), synthetic_sequence(s, 2)};
  StaticPredictor sp;
  const Predictor* preds[] = {&sp};
  const std::string svg = to_svg(evaluate(seqs, preds, 0.1));
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("<polyline"), std::string::npos);
  EXPECT_NE(svg.find("<polygon"), std::string::npos);
  EXPECT_NE(svg.find("static"), std::string::npos);
}

TEST(Export, PayloadSizeAndRoundTrip) {
  const GridSpec s;
  ScratchDir dir("export");
  std::vector<Sequence> seqs;
  for (int i = 0; i < 2; ++i) {
    Sequence seq;
    for (int t = 0; t < kSequenceLength; ++t) {
      DogmaFrame f;
      f.spec = s;
      f.mode = DogmaMode::kDst;
      f.data.assign(4 * s.cell_count(), 0.25 * ((i + t) % 4));
      seq.frames.push_back(std::move(f));
    }
    seqs.push_back(std::move(seq));
  }
  const auto path = dir / "seq.f32";
  export_sequences(seqs, path, 42);
  const auto bytes = io::read_bytes(path);
  const std::size_t payload = 2ull * 20 * 4 * 128 * 128 * 4;
  const std::string text(reinterpret_cast<const char*>(bytes.data()), bytes.size());
  const std::size_t nl = text.find('\n');
  ASSERT_NE(nl, std::string::npos);
  EXPECT_EQ(bytes.size() - nl - 1, payload);

  const ImportedSequences back = import_sequences(path);
  EXPECT_EQ(back.header.count, 2);
  EXPECT_EQ(back.header.seq_len, 20);
  EXPECT_EQ(back.header.channels, 4);
  EXPECT_EQ(back.header.height, 128);
  EXPECT_EQ(back.header.dtype, "f32-le");
  EXPECT_EQ(back.header.seed, 42u);
  std::size_t i = 0;
  for (const auto& seq : seqs) {
    for (const auto& f : seq.frames) {
      for (double v : f.data) ASSERT_EQ(back.data[i++], static_cast<float>(v));
    }
  }
  export_sequences(seqs, dir / "again.f32", 42);
  EXPECT_EQ(io::read_bytes(dir / "again.f32"), bytes);
}

TEST(Export, ProbabilisticHasThreeChannels) {
  ScratchDir dir("export3");
  std::vector<Sequence> seqs{synthetic_sequence(GridSpec{4, 1.0}, 9)};
  export_sequences(seqs, dir / "p.f32", 1);
  EXPECT_EQ(import_sequences(dir / "p.f32").header.channels, 3);
}

TEST(Export, MissingDirectoryIsIoError) {
  std::vector<Sequence> seqs{synthetic_sequence(GridSpec{4, 1.0}, 9)};
  try {
    export_sequences(seqs, "/nonexistent/dir/out.f32", 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
    EXPECT_NE(std::string(e.what()).find("/nonexistent/dir/out.f32"), std::string::npos);
  }
}

}  // namespace
}  // namespace dogma::predict
