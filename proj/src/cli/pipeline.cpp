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

#include "dogma/cli/pipeline.hpp"

#include <openssl/evp.h>

#include <array>
#include <cmath>
#include <numbers>

#include "dogma/io/files.hpp"
#include "dogma/measurement/raytrace.hpp"

namespace dogma::cli {

void PipelineConfig::validate() const {
  try {
    grid.validate();
  } catch (const Error& e) {
    fail(ErrorCode::kConfig, "grid: " + e.message());
  }
  auto in_unit = [](double v) { return v > 0.0 && v <= 1.0; };
  if (!in_unit(measurement.m_occ) || !in_unit(measurement.m_free)) {
    fail(ErrorCode::kConfig, "measurement masses must lie in (0, 1]");
  }
  const auto& r = ground.ransac;
  if (r.iterations < 1 || !(r.inlier_threshold > 0) || !(r.max_tilt >= 0) ||
      r.min_inlier_fraction < 0 || r.min_inlier_fraction > 1 ||
      r.max_below_fraction < 0 || r.max_below_fraction > 1) {
    fail(ErrorCode::kConfig, "ground parameters out of range");
  }
  filter.validate();
}

PipelineConfig parse_pipeline_config(std::string_view text, std::string_view source) {
  const io::Json root = io::parse_json(text, source);
  io::StrictObject top(root, std::string(source));
  PipelineConfig cfg;
  if (top.has("grid")) {
    io::StrictObject o(top.raw("grid"), top.path("grid"));
    cfg.grid.cells_per_side = o.get("cells_per_side", cfg.grid.cells_per_side);
    cfg.grid.side_length = o.get("side_length", cfg.grid.side_length);
    o.finish();
  }
  if (top.has("measurement")) {
    io::StrictObject o(top.raw("measurement"), top.path("measurement"));
    cfg.measurement.m_occ = o.get("m_occ", cfg.measurement.m_occ);
    cfg.measurement.m_free = o.get("m_free", cfg.measurement.m_free);
    o.finish();
  }
  if (top.has("ground")) {
    io::StrictObject o(top.raw("ground"), top.path("ground"));
    auto& g = cfg.ground;
    g.enabled = o.get("enabled", g.enabled);
    g.ransac.iterations = o.get("iterations", g.ransac.iterations);
    g.ransac.inlier_threshold = o.get("inlier_threshold", g.ransac.inlier_threshold);
    g.ransac.max_tilt =
        o.get("max_tilt_deg", g.ransac.max_tilt * 180.0 / std::numbers::pi) *
        std::numbers::pi / 180.0;
    g.ransac.min_inlier_fraction = o.get("min_inlier_fraction", g.ransac.min_inlier_fraction);
    g.ransac.max_below_fraction = o.get("max_below_fraction", g.ransac.max_below_fraction);
    o.finish();
  }
  if (top.has("filter")) {
    cfg.filter = filter_config_from_json(top.raw("filter"), top.path("filter"), cfg.filter);
  }
  cfg.filter.alpha = top.get("alpha", cfg.filter.alpha);
  cfg.filter.seed = top.get("seed", cfg.filter.seed);
  if (top.has("mode")) cfg.filter.mode = parse_mode(top.get<std::string>("mode", "dst"));
  if (top.has("paths")) {
    io::StrictObject o(top.raw("paths"), top.path("paths"));
    cfg.frames_dir = o.get("frames", cfg.frames_dir);
    cfg.out_dir = o.get("out", cfg.out_dir);
    o.finish();
  }
  top.finish();
  cfg.validate();
  return cfg;
}

PipelineConfig load_pipeline_config(const std::filesystem::path& path) {
  return parse_pipeline_config(io::read_text(path), path.string());
}

io::Json to_json(const PipelineConfig& c) {
  const auto& r = c.ground.ransac;
  return io::Json{
      {"grid", {{"cells_per_side", c.grid.cells_per_side}, {"side_length", c.grid.side_length}}},
      {"measurement", {{"m_occ", c.measurement.m_occ}, {"m_free", c.measurement.m_free}}},
      {"ground",
       {{"enabled", c.ground.enabled},
        {"iterations", r.iterations},
        {"inlier_threshold", r.inlier_threshold},
        {"max_tilt_deg", r.max_tilt * 180.0 / std::numbers::pi},
        {"min_inlier_fraction", r.min_inlier_fraction},
        {"max_below_fraction", r.max_below_fraction}}},
      {"filter", to_json(c.filter)},
      {"paths", {{"frames", c.frames_dir}, {"out", c.out_dir}}},
  };
}

std::string config_hash(const PipelineConfig& cfg) {
  io::Json j = to_json(cfg);
  j.erase("paths");  // where the data lives does not change the result
  const std::string text = j.dump();
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    fail(ErrorCode::kIo, "SHA-256 digest failed");
  }
  static const char* const kHex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 0xF];
  }
  return out;
}

EvidentialGrid measure(const PointCloud& cloud, const PipelineConfig& cfg) {
  const PointCloud* input = &cloud;
  GroundSegmentation seg;
  if (cfg.ground.enabled) {
    const std::uint64_t seed =
        cfg.filter.seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(cloud.frame_index);
    seg = segment_ground(cloud, cfg.ground.ransac, seed);
    input = &seg.cloud;
  }
  const MeasurementGrid labels = raytrace(*input, cfg.grid);
  EvidentialGrid g = to_evidential(labels, cfg.measurement.m_occ, cfg.measurement.m_free);
  g.frame_index = cloud.frame_index;
  g.timestamp = static_cast<double>(cloud.frame_index) * cfg.filter.dt();
  return g;
}

std::vector<SimFrame> simulate(const sim::SceneConfig& scene, const GridSpec& grid,
                               int frames) {
  const int n = frames < 0 ? scene.frame_count : frames;
  std::vector<SimFrame> out;
  out.reserve(static_cast<std::size_t>(n));
  sim::SceneState state = sim::initial_state(scene);
  for (int k = 0; k < n; ++k) {
    if (k > 0) state = sim::step(state, scene);
    SimFrame f;
    f.state = state;
    f.scan = sim::scan(state, scene);
    f.truth = sim::ground_truth(state, scene, grid);
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace dogma::cli
