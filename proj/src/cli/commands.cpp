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

#include "dogma/cli/commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

#include "dogma/filter/filter.hpp"
#include "dogma/io/egrid.hpp"
#include "dogma/io/files.hpp"
#include "dogma/io/json_util.hpp"

#ifndef DOGMA_VERSION
#define DOGMA_VERSION "0.0.0"
#endif

namespace dogma::cli {
namespace {

constexpr const char* kManifest = "manifest.json";
constexpr const char* kSequencesFile = "sequences.f32";

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorCode::kIo, "cannot create directory " + dir.string() + ": " + ec.message());
}

void require_dir(const fs::path& dir) {
  if (!fs::is_directory(dir)) fail(ErrorCode::kIo, "not a directory: " + dir.string());
}

std::string seq_dir_name(std::int64_t first_frame) {
  std::string name = io::frame_file_name(first_frame, "");
  return "seq_" + name;
}

io::GridTensor plane_tensor(const predict::OccupancyGrid& g, std::int64_t frame, double t) {
  io::GridTensor out;
  out.channels = 1;
  out.height = out.width = static_cast<std::uint32_t>(g.spec.cells_per_side);
  out.frame_index = static_cast<std::uint64_t>(frame);
  out.timestamp = t;
  out.values.assign(g.values.begin(), g.values.end());
  return out;
}

predict::OccupancyGrid grid_of_channel(const io::GridTensor& t, const GridSpec& spec,
                                       const fs::path& path) {
  const auto n = static_cast<std::uint32_t>(spec.cells_per_side);
  if (t.height != n || t.width != n || t.channels < 1) {
    fail(ErrorCode::kSpecMismatch, path.string() + ": expected a " + std::to_string(n) + "x" +
                                       std::to_string(n) + " grid");
  }
  predict::OccupancyGrid g;
  g.spec = spec;
  const auto c0 = t.channel(0);
  g.values.assign(c0.begin(), c0.end());
  return g;
}

Vec2 vec_of(const io::Json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

std::map<std::int64_t, Pose2> load_poses(const fs::path& frames_dir) {
  const fs::path path = frames_dir / "poses.csv";
  if (!fs::exists(path)) fail(ErrorCode::kIo, "missing pose file " + path.string());
  std::map<std::int64_t, Pose2> poses;
  for (const PoseRecord& r : parse_pose_csv(io::read_text(path))) poses[r.frame] = r.pose;
  return poses;
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfig:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kIo:
    case ErrorCode::kEmptySequence:
      return kExitUsage;
    default:
      return kExitData;
  }
}

// ---------------------------------------------------------------------------
// simulate

int cmd_simulate(const SimulateOptions& opt) {
  sim::SceneConfig scene = sim::load_scene_config(opt.config);
  if (opt.seed) scene.seed = *opt.seed;
  if (opt.frames) {
    if (*opt.frames < 1) fail(ErrorCode::kInvalidArgument, "--frames must be positive");
    scene.frame_count = *opt.frames;
  }
  scene.validate();
  opt.grid.validate();
  ensure_dir(opt.out);
  ensure_dir(opt.out / "truth");

  const std::vector<SimFrame> frames = simulate(scene, opt.grid);
  std::vector<PoseRecord> poses;
  for (const SimFrame& f : frames) {
    const std::int64_t k = f.state.frame_index;
    PointCloud cloud = f.scan.cloud;
    io::write_bytes(opt.out / io::frame_file_name(k, ".bin"), serialize_velodyne_bin(cloud));
    io::write_bytes(opt.out / io::frame_file_name(k, ".lbl"),
                    std::as_bytes(std::span(f.scan.ground)));
    io::write_egrid(opt.out / "truth" / io::frame_file_name(k, ".egrid"),
                    sim::to_tensor(f.truth, k, static_cast<double>(k) * scene.dt()));
    poses.push_back({k, f.state.ego});
  }
  io::write_text(opt.out / "poses.csv", format_pose_csv(poses));
  return static_cast<int>(frames.size());
}

// ---------------------------------------------------------------------------
// pipeline

int cmd_pipeline(const PipelineOptions& opt) {
  PipelineConfig cfg = opt.config ? load_pipeline_config(*opt.config) : PipelineConfig{};
  if (opt.frames) cfg.frames_dir = opt.frames->string();
  if (opt.out) cfg.out_dir = opt.out->string();
  if (opt.seed) cfg.filter.seed = *opt.seed;
  if (opt.mode) cfg.filter.mode = *opt.mode;
  if (cfg.frames_dir.empty()) fail(ErrorCode::kInvalidArgument, "no frames directory given");
  if (cfg.out_dir.empty()) fail(ErrorCode::kInvalidArgument, "no output directory given");
  cfg.validate();

  const fs::path frames_dir = cfg.frames_dir;
  const fs::path out = cfg.out_dir;
  require_dir(frames_dir);
  const std::vector<fs::path> files = io::list_frames(frames_dir, ".bin");
  if (files.empty()) {
    fail(ErrorCode::kEmptySequence, "no .bin frames in " + frames_dir.string());
  }
  const std::map<std::int64_t, Pose2> pose_map = load_poses(frames_dir);

  std::vector<std::int64_t> indices;
  std::vector<Pose2> poses;
  for (const fs::path& f : files) {
    const std::int64_t k = std::stoll(f.stem().string());
    const auto it = pose_map.find(k);
    if (it == pose_map.end()) {
      fail(ErrorCode::kFormat, "poses.csv has no entry for frame " + std::to_string(k));
    }
    indices.push_back(k);
    poses.push_back(it->second);
  }
  const std::vector<Vec2> ego_v = ego_velocities(poses, cfg.filter.dt());

  for (const char* sub : {"dogma", "state", "particles", "preview"}) ensure_dir(out / sub);

  GridFilter filter(cfg.filter);
  io::Json frames_json = io::Json::array();
  for (std::size_t i = 0; i < files.size(); ++i) {
    const std::int64_t k = indices[i];
    try {
      PointCloud cloud = parse_velodyne_bin(io::read_bytes(files[i]));
      cloud.sensor_pose = poses[i];
      cloud.frame_index = k;
      const EvidentialGrid meas = measure(cloud, cfg);
      const FilterStep st = filter.step(meas, ego_v[i]);

      const std::string name = io::frame_file_name(k, ".egrid");
      io::write_egrid(out / "dogma" / name, to_tensor(st.dogma));

      io::GridTensor state = io::to_tensor(st.snapshot.posterior);
      state.channels = 3;
      state.values.reserve(state.values.size() + st.snapshot.dynamic_mask.size());
      for (std::uint8_t m : st.snapshot.dynamic_mask) state.values.push_back(m ? 1.0F : 0.0F);
      io::write_egrid(out / "state" / name, state);

      io::write_bytes(out / "particles" / io::frame_file_name(k, ".bin"),
                      encode_particles(st.snapshot.particles));
      const std::vector<double> occ = st.dogma.occupancy_probability();
      const auto side = static_cast<std::uint32_t>(cfg.grid.cells_per_side);
      io::write_bytes(out / "preview" / io::frame_file_name(k, ".pgm"),
                      io::encode_pgm(occ, side, side));

      frames_json.push_back({{"index", k},
                             {"origin", {st.dogma.origin.x, st.dogma.origin.y}},
                             {"ego_velocity", {ego_v[i].x, ego_v[i].y}}});
    } catch (const Error& e) {
      throw Error(e.code(), "frame " + std::to_string(k) + ": " + e.message(), e.cell());
    }
  }

  io::Json config = to_json(cfg);
  config.erase("paths");
  const io::Json manifest{{"tool_version", DOGMA_VERSION},
                          {"config_hash", config_hash(cfg)},
                          {"config", config},
                          {"seed", cfg.filter.seed},
                          {"mode", std::string(to_string(cfg.filter.mode))},
                          {"frame_count", static_cast<std::int64_t>(files.size())},
                          {"frame_rate", cfg.filter.frame_rate},
                          {"grid",
                           {{"cells_per_side", cfg.grid.cells_per_side},
                            {"side_length", cfg.grid.side_length}}},
                          {"frames", frames_json}};
  io::write_text(out / kManifest, manifest.dump(2) + "\n");
  return static_cast<int>(files.size());
}

RunManifest read_manifest(const fs::path& run_dir) {
  require_dir(run_dir);
  const fs::path path = run_dir / kManifest;
  if (!fs::exists(path)) fail(ErrorCode::kIo, "missing run manifest " + path.string());
  const io::Json j = io::parse_json(io::read_text(path), path.string());
  RunManifest m;
  try {
    m.tool_version = j.at("tool_version").get<std::string>();
    m.config_hash = j.at("config_hash").get<std::string>();
    m.config = parse_pipeline_config(j.at("config").dump(), path.string() + ":config");
    m.frame_count = j.at("frame_count").get<std::int64_t>();
    for (const io::Json& f : j.at("frames")) {
      m.frame_indices.push_back(f.at("index").get<std::int64_t>());
      m.origins.push_back(vec_of(f.at("origin")));
      m.ego_velocities.push_back(vec_of(f.at("ego_velocity")));
    }
  } catch (const io::Json::exception& e) {
    fail(ErrorCode::kFormat, path.string() + ": " + e.what());
  }
  if (static_cast<std::int64_t>(m.frame_indices.size()) != m.frame_count) {
    fail(ErrorCode::kFormat, path.string() + ": frame list does not match frame_count");
  }
  return m;
}

// ---------------------------------------------------------------------------
// sequences

std::vector<predict::Sequence> load_sequences(const fs::path& run_dir, bool with_snapshots) {
  const RunManifest m = read_manifest(run_dir);
  const GridSpec& spec = m.config.grid;
  const std::size_t chunks = m.frame_indices.size() / predict::kSequenceLength;
  if (chunks == 0) {
    fail(ErrorCode::kEmptySequence,
         run_dir.string() + ": fewer than " + std::to_string(predict::kSequenceLength) +
             " frames (" + std::to_string(m.frame_indices.size()) + ")");
  }
  std::vector<predict::Sequence> seqs(chunks);
  for (std::size_t s = 0; s < chunks; ++s) {
    predict::Sequence& seq = seqs[s];
    const std::size_t base = s * predict::kSequenceLength;
    seq.first_frame = m.frame_indices[base];
    for (int t = 0; t < predict::kSequenceLength; ++t) {
      const std::size_t i = base + static_cast<std::size_t>(t);
      const fs::path p = run_dir / "dogma" / io::frame_file_name(m.frame_indices[i], ".egrid");
      DogmaFrame f = dogma_from_tensor(io::read_egrid(p), spec);
      f.origin = m.origins[i];
      seq.frames.push_back(std::move(f));
    }
    if (with_snapshots) {
      const std::size_t i = base + predict::kSeedFrames - 1;
      const std::int64_t k = m.frame_indices[i];
      const io::GridTensor state =
          io::read_egrid(run_dir / "state" / io::frame_file_name(k, ".egrid"));
      if (state.channels != 3) {
        fail(ErrorCode::kFormat, "state grid of frame " + std::to_string(k) + " is not 3-channel");
      }
      io::GridTensor masses = state;
      masses.channels = 2;
      masses.values.resize(2 * state.plane_size());
      FilterSnapshot snap;
      snap.posterior = io::evidential_from_tensor(masses, spec, m.origins[i]);
      const auto mask = state.channel(2);
      snap.dynamic_mask.reserve(mask.size());
      for (float v : mask) snap.dynamic_mask.push_back(v != 0.0F ? 1 : 0);
      snap.particles =
          decode_particles(io::read_bytes(run_dir / "particles" / io::frame_file_name(k, ".bin")));
      snap.ego_velocity = m.ego_velocities[i];
      seq.snapshot = std::move(snap);
    }
  }
  return seqs;
}

void attach_targets(std::vector<predict::Sequence>& seqs, const fs::path& dir) {
  require_dir(dir);
  for (predict::Sequence& seq : seqs) {
    seq.targets.clear();
    for (int k = 1; k <= predict::kHorizon; ++k) {
      const DogmaFrame& f = seq.frames[predict::kSeedFrames - 1 + k];
      const fs::path p = dir / io::frame_file_name(f.frame_index, ".egrid");
      seq.targets.push_back(grid_of_channel(io::read_egrid(p), f.spec, p));
    }
  }
}

std::vector<predict::OccupancyGrid> StoredPredictor::predict(const predict::Sequence& seq,
                                                             int horizon, double) const {
  std::vector<predict::OccupancyGrid> out;
  const fs::path base = dir_ / id_ / seq_dir_name(seq.first_frame);
  const GridSpec& spec = seq.frames.front().spec;
  for (int k = 1; k <= horizon; ++k) {
    const std::size_t i = predict::kSeedFrames - 1 + static_cast<std::size_t>(k);
    const std::int64_t frame =
        i < seq.frames.size() ? seq.frames[i].frame_index : seq.first_frame + static_cast<std::int64_t>(i);
    const fs::path p = base / io::frame_file_name(frame, ".egrid");
    out.push_back(grid_of_channel(io::read_egrid(p), spec, p));
  }
  return out;
}

void cmd_predict(const fs::path& run_dir, const std::vector<std::string>& predictors,
                 const fs::path& out) {
  std::vector<std::unique_ptr<predict::Predictor>> preds;
  bool need_snap = false;
  for (const std::string& id : predictors) {
    preds.push_back(predict::make_predictor(id));
    need_snap = need_snap || id == "pf";
  }
  const RunManifest m = read_manifest(run_dir);
  const double dt = m.config.filter.dt();
  const std::vector<predict::Sequence> seqs = load_sequences(run_dir, need_snap);
  for (const auto& p : preds) {
    for (const predict::Sequence& seq : seqs) {
      const fs::path dir = out / p->id() / seq_dir_name(seq.first_frame);
      ensure_dir(dir);
      const auto forecasts = p->predict(seq, predict::kHorizon, dt);
      for (int k = 1; k <= predict::kHorizon; ++k) {
        const std::int64_t frame = seq.frames[predict::kSeedFrames - 1 + k].frame_index;
        io::write_egrid(dir / io::frame_file_name(frame, ".egrid"),
                        plane_tensor(forecasts[k - 1], frame, static_cast<double>(frame) * dt));
      }
    }
  }
}

predict::MetricsTable cmd_eval(const EvalOptions& opt) {
  const RunManifest m = read_manifest(opt.run_dir);
  const double dt = m.config.filter.dt();
  std::vector<std::unique_ptr<predict::Predictor>> preds;
  bool need_snap = false;
  for (const std::string& id : opt.predictors) {
    if (opt.predictions) {
      preds.push_back(std::make_unique<StoredPredictor>(id, *opt.predictions));
    } else {
      preds.push_back(predict::make_predictor(id));
      need_snap = need_snap || id == "pf";
    }
  }
  std::vector<predict::Sequence> seqs;
  try {
    seqs = load_sequences(opt.run_dir, need_snap);
  } catch (const Error& e) {
    throw Error(e.code(), opt.run_dir.string() + ": " + e.message());
  }
  if (opt.targets) attach_targets(seqs, *opt.targets);

  std::vector<const predict::Predictor*> ptrs;
  for (const auto& p : preds) ptrs.push_back(p.get());
  predict::MetricsTable table;
  try {
    table = predict::evaluate(seqs, ptrs, dt);
  } catch (const Error& e) {
    throw Error(e.code(), opt.run_dir.string() + ": " + e.message());
  }
  ensure_dir(opt.out);
  if (opt.csv) io::write_text(opt.out / "metrics.csv", predict::to_csv(table));
  if (opt.svg) io::write_text(opt.out / "mse.svg", predict::to_svg(table));
  return table;
}

int cmd_export(const fs::path& run_dir, const fs::path& out) {
  const RunManifest m = read_manifest(run_dir);
  const std::vector<predict::Sequence> seqs = load_sequences(run_dir, false);
  ensure_dir(out);
  predict::export_sequences(seqs, out / kSequencesFile, m.config.filter.seed);
  return static_cast<int>(seqs.size());
}

// ---------------------------------------------------------------------------
// argument parsing

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dynamic occupancy grid maps from LiDAR scans", "dogma"};
  app.set_version_flag("--version", DOGMA_VERSION);
  app.require_subcommand(1);

  SimulateOptions sim_opt;
  CLI::App* sim = app.add_subcommand("simulate", "render a scene config into scans and truth grids");
  sim->add_option("--config", sim_opt.config, "scene JSON")->required();
  sim->add_option("--out", sim_opt.out, "output directory")->required();
  std::uint64_t sim_seed = 0;
  int sim_frames = 0;
  CLI::Option* sim_seed_opt = sim->add_option("--seed", sim_seed, "override the scene seed");
  CLI::Option* sim_frames_opt = sim->add_option("--frames", sim_frames, "frame count");

  PipelineOptions pipe_opt;
  std::string pipe_config, pipe_frames, pipe_out, pipe_mode;
  std::uint64_t pipe_seed = 0;
  CLI::App* pipe = app.add_subcommand("pipeline", "filter a directory of scans");
  CLI::Option* pc = pipe->add_option("--config", pipe_config, "pipeline JSON");
  CLI::Option* pf = pipe->add_option("--frames", pipe_frames, "scan directory");
  CLI::Option* po = pipe->add_option("--out", pipe_out, "run directory");
  CLI::Option* ps = pipe->add_option("--seed", pipe_seed, "override the filter seed");
  CLI::Option* pm =
      pipe->add_option("--mode", pipe_mode, "dst or prob")->check(CLI::IsMember({"dst", "prob"}));

  std::string pred_run, pred_out;
  std::vector<std::string> pred_ids;
  CLI::App* pred = app.add_subcommand("predict", "write baseline forecasts as EGRIDs");
  pred->add_option("--frames", pred_run, "run directory")->required();
  pred->add_option("--predictor", pred_ids, "static or pf (repeatable)")->required();
  pred->add_option("--out", pred_out, "output directory")->required();

  EvalOptions eval_opt;
  std::string eval_run, eval_targets, eval_preds, eval_out;
  std::vector<std::string> eval_ids, eval_formats;
  CLI::App* eval = app.add_subcommand("eval", "score predictors per horizon step");
  eval->add_option("--frames", eval_run, "run directory")->required();
  CLI::Option* et = eval->add_option("--targets", eval_targets, "truth EGRID directory");
  CLI::Option* ep = eval->add_option("--predictions", eval_preds, "stored forecasts");
  eval->add_option("--predictor", eval_ids, "static or pf (repeatable)");
  eval->add_option("--out", eval_out, "output directory")->required();
  eval->add_option("--format", eval_formats, "csv or svg (repeatable)")
      ->check(CLI::IsMember({"csv", "svg"}));

  std::string exp_run, exp_out;
  CLI::App* exp = app.add_subcommand("export", "write sequences as one f32 tensor file");
  exp->add_option("--frames", exp_run, "run directory")->required();
  exp->add_option("--out", exp_out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << DOGMA_VERSION << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "dogma: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (sim->parsed()) {
      if (*sim_seed_opt) sim_opt.seed = sim_seed;
      if (*sim_frames_opt) sim_opt.frames = sim_frames;
      const int n = cmd_simulate(sim_opt);
      out << "simulate: " << n << " frames -> " << sim_opt.out.string() << "\n";
    } else if (pipe->parsed()) {
      if (*pc) pipe_opt.config = pipe_config;
      if (*pf) pipe_opt.frames = pipe_frames;
      if (*po) pipe_opt.out = pipe_out;
      if (*ps) pipe_opt.seed = pipe_seed;
      if (*pm) pipe_opt.mode = parse_mode(pipe_mode);
      const int n = cmd_pipeline(pipe_opt);
      out << "pipeline: " << n << " frames\n";
    } else if (pred->parsed()) {
      cmd_predict(pred_run, pred_ids, pred_out);
      out << "predict: wrote " << pred_out << "\n";
    } else if (eval->parsed()) {
      eval_opt.run_dir = eval_run;
      eval_opt.out = eval_out;
      if (*et) eval_opt.targets = fs::path(eval_targets);
      if (*ep) eval_opt.predictions = fs::path(eval_preds);
      if (!eval_ids.empty()) eval_opt.predictors = eval_ids;
      if (!eval_formats.empty()) {
        eval_opt.csv = std::ranges::count(eval_formats, "csv") > 0;
        eval_opt.svg = std::ranges::count(eval_formats, "svg") > 0;
      }
      const predict::MetricsTable t = cmd_eval(eval_opt);
      out << "eval: " << t.rows.size() << " rows\n";
    } else if (exp->parsed()) {
      const int n = cmd_export(exp_run, exp_out);
      out << "export: " << n << " sequences\n";
    }
  } catch (const Error& e) {
    err << "dogma: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "dogma: " << e.what() << "\n";
    return kExitData;
  }
  return kExitOk;
}

}  // namespace dogma::cli
