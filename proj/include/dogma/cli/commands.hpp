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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dogma/cli/pipeline.hpp"
#include "dogma/predict/evaluate.hpp"

namespace dogma::cli {

namespace fs = std::filesystem;

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;  // bad flags, bad config, missing input
inline constexpr int kExitData = 3;   // malformed or inconsistent data

int exit_code_for(ErrorCode code);

/// Parses argv and dispatches to one of the commands below. Diagnostics go to
/// `err`, summaries to `out`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct SimulateOptions {
  fs::path config;
  fs::path out;
  std::optional<std::uint64_t> seed;
  std::optional<int> frames;
  GridSpec grid;
};

/// Writes NNNNNNNNNN.bin scans, NNNNNNNNNN.lbl ground labels (one byte per
/// point), poses.csv and truth/NNNNNNNNNN.egrid [occupancy, vx_rel, vy_rel].
/// Returns the number of frames written.
int cmd_simulate(const SimulateOptions& opt);

struct PipelineOptions {
  std::optional<fs::path> config;
  std::optional<fs::path> frames;
  std::optional<fs::path> out;
  std::optional<std::uint64_t> seed;
  std::optional<DogmaMode> mode;
};

/// Filters a directory of scans. Writes dogma/NNNNNNNNNN.egrid,
/// state/NNNNNNNNNN.egrid [m_occ, m_free, dynamic], particles/NNNNNNNNNN.bin,
/// preview/NNNNNNNNNN.pgm and manifest.json. Returns the frame count.
int cmd_pipeline(const PipelineOptions& opt);

/// Contents of a pipeline run directory.
struct RunManifest {
  std::string tool_version;
  std::string config_hash;
  PipelineConfig config;
  std::int64_t frame_count = 0;
  std::vector<std::int64_t> frame_indices;
  std::vector<Vec2> origins;
  std::vector<Vec2> ego_velocities;
};

RunManifest read_manifest(const fs::path& run_dir);

/// Non-overlapping 20-frame chunks of a run. Snapshots are restored from the
/// state and particle dumps of each chunk's fifth frame when requested.
/// Trailing frames that do not fill a chunk are ignored. Throws
/// kEmptySequence when no chunk is complete.
std::vector<predict::Sequence> load_sequences(const fs::path& run_dir, bool with_snapshots);

/// Replaces the scoring targets with channel 0 of matching EGRIDs in `dir`
/// (e.g. the truth/ directory written by simulate).
void attach_targets(std::vector<predict::Sequence>& seqs, const fs::path& dir);

/// Predictions stored as <dir>/<predictor>/<first frame>/<target frame>.egrid.
class StoredPredictor final : public predict::Predictor {
 public:
  StoredPredictor(std::string id, fs::path dir) : id_(std::move(id)), dir_(std::move(dir)) {}
  std::string id() const override { return id_; }
  std::vector<predict::OccupancyGrid> predict(const predict::Sequence& seq, int horizon,
                                              double dt) const override;

 private:
  std::string id_;
  fs::path dir_;
};

/// Writes baseline forecasts for every sequence in the stored layout above.
void cmd_predict(const fs::path& run_dir, const std::vector<std::string>& predictors,
                 const fs::path& out);

struct EvalOptions {
  fs::path run_dir;
  std::optional<fs::path> targets;
  std::optional<fs::path> predictions;
  std::vector<std::string> predictors{"static", "pf"};
  fs::path out;
  bool csv = true;
  bool svg = true;
};

/// Writes metrics.csv and/or mse.svg; returns the table.
predict::MetricsTable cmd_eval(const EvalOptions& opt);

/// Writes <out>/sequences.f32 (see predict::export_sequences). Returns the
/// number of sequences.
int cmd_export(const fs::path& run_dir, const fs::path& out);

}  // namespace dogma::cli
