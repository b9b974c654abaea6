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

#include "dogma/sim/scene.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "dogma/io/files.hpp"
#include "dogma/io/json_util.hpp"

namespace dogma::sim {
namespace {

using io::Json;
using io::StrictObject;

Vec2 vec2_from(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    fail(ErrorCode::kConfig, where + ": expected [x, y]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Vec2 vec2_field(StrictObject& obj, const std::string& key, Vec2 fallback) {
  if (!obj.has(key)) return fallback;
  return vec2_from(obj.raw(key), obj.path(key));
}

std::mt19937_64 frame_rng(std::uint64_t seed, std::int64_t frame, std::uint32_t stream) {
  const auto f = static_cast<std::uint64_t>(frame);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(f), static_cast<std::uint32_t>(f >> 32), stream};
  return std::mt19937_64(seq);
}

OrientedBox static_box(const StaticShape& s) {
  return {(s.min + s.max) * 0.5, (s.max - s.min) * 0.5, 0.0};
}

void emit_ground(const GroundPlaneSpec& g, std::mt19937_64& rng, LabeledScan& out) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> z_noise(0.0, g.z_noise_sigma);
  const double slope = std::tan(g.tilt);
  for (int i = 0; i < g.point_count; ++i) {
    const double r = g.radius * std::sqrt(unit(rng));
    const double a = 2.0 * std::numbers::pi * unit(rng);
    const double x = r * std::cos(a);
    const double y = r * std::sin(a);
    const double z = slope * x + (g.z_noise_sigma > 0 ? z_noise(rng) : 0.0);
    out.cloud.points.push_back({static_cast<float>(x), static_cast<float>(y),
                                static_cast<float>(z), 0.2F});
    out.ground.push_back(1);
  }
}

}  // namespace

void SceneConfig::validate() const {
  auto bad = [](const std::string& what) { fail(ErrorCode::kConfig, what); };
  if (frame_count < 0) bad("frame_count must be >= 0");
  if (!(frame_rate > 0)) bad("frame_rate must be > 0");
  if (sensor.beam_count < 1) bad("sensor.beam_count must be >= 1");
  if (!(sensor.max_range > 0)) bad("sensor.max_range must be > 0");
  if (sensor.range_noise_sigma < 0) bad("sensor.range_noise_sigma must be >= 0");
  if (!(sensor.angular_span > 0)) bad("sensor.angular_span must be > 0");
  for (const auto& a : agents) {
    if (!(a.size.x > 0 && a.size.y > 0)) bad("agent size must be positive");
  }
  for (const auto& s : static_shapes) {
    if (!(s.max.x > s.min.x && s.max.y > s.min.y)) bad("static shape must have max > min");
  }
  if (ground_plane.z_noise_sigma < 0 || ground_plane.point_count < 0 ||
      !(ground_plane.radius > 0)) {
    bad("ground_plane fields out of range");
  }
  if (!ego.poses.empty() && static_cast<int>(ego.poses.size()) < frame_count) {
    bad("ego.poses must list one pose per frame");
  }
}

SceneConfig parse_scene_config(std::string_view json_text, std::string_view source) {
  const Json root = io::parse_json(json_text, source);
  SceneConfig cfg;
  StrictObject top(root, std::string(source));
  cfg.name = top.get<std::string>("name", cfg.name);
  cfg.frame_count = top.get("frame_count", cfg.frame_count);
  cfg.frame_rate = top.get("frame_rate", cfg.frame_rate);
  cfg.seed = top.get("seed", cfg.seed);

  if (top.has("static_shapes")) {
    const Json& arr = top.raw("static_shapes");
    if (!arr.is_array()) fail(ErrorCode::kConfig, top.path("static_shapes") + ": expected array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      StrictObject o(arr[i], top.path("static_shapes") + "[" + std::to_string(i) + "]");
      StaticShape s;
      s.min = vec2_from(o.raw("min"), o.path("min"));
      s.max = vec2_from(o.raw("max"), o.path("max"));
      o.finish();
      cfg.static_shapes.push_back(s);
    }
  }
  if (top.has("agents")) {
    const Json& arr = top.raw("agents");
    if (!arr.is_array()) fail(ErrorCode::kConfig, top.path("agents") + ": expected array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      StrictObject o(arr[i], top.path("agents") + "[" + std::to_string(i) + "]");
      AgentSpec a;
      a.size = vec2_from(o.raw("size"), o.path("size"));
      a.pose.position = vec2_from(o.raw("position"), o.path("position"));
      a.pose.heading = o.get("heading", 0.0);
      a.velocity = vec2_field(o, "velocity", {});
      o.finish();
      cfg.agents.push_back(a);
    }
  }
  if (top.has("ego")) {
    StrictObject o(top.raw("ego"), top.path("ego"));
    cfg.ego.start.position = vec2_field(o, "position", {});
    cfg.ego.start.heading = o.get("heading", 0.0);
    cfg.ego.velocity = vec2_field(o, "velocity", {});
    if (o.has("poses")) {
      for (const Json& p : o.raw("poses")) {
        if (!p.is_array() || p.size() != 3) {
          fail(ErrorCode::kConfig, o.path("poses") + ": expected [x, y, heading]");
        }
        cfg.ego.poses.push_back({{p[0].get<double>(), p[1].get<double>()}, p[2].get<double>()});
      }
    }
    o.finish();
  }
  if (top.has("sensor")) {
    StrictObject o(top.raw("sensor"), top.path("sensor"));
    auto& s = cfg.sensor;
    s.beam_count = o.get("beam_count", s.beam_count);
    s.angular_span = o.get("angular_span", s.angular_span);
    s.max_range = o.get("max_range", s.max_range);
    s.range_noise_sigma = o.get("range_noise_sigma", s.range_noise_sigma);
    s.return_height = o.get("return_height", s.return_height);
    o.finish();
  }
  if (top.has("ground_plane")) {
    StrictObject o(top.raw("ground_plane"), top.path("ground_plane"));
    auto& g = cfg.ground_plane;
    g.enabled = o.get("enabled", g.enabled);
    g.z_noise_sigma = o.get("z_noise_sigma", g.z_noise_sigma);
    g.tilt = o.get("tilt", g.tilt);
    g.point_count = o.get("point_count", g.point_count);
    g.radius = o.get("radius", g.radius);
    o.finish();
  }
  top.finish();
  cfg.validate();
  return cfg;
}

SceneConfig load_scene_config(const std::filesystem::path& path) {
  return parse_scene_config(io::read_text(path), path.string());
}

SceneState initial_state(const SceneConfig& cfg) {
  SceneState s;
  for (const auto& a : cfg.agents) s.agents.push_back({a.pose, a.velocity, a.size});
  if (!cfg.ego.poses.empty()) {
    s.ego = cfg.ego.poses.front();
    if (cfg.ego.poses.size() > 1) {
      s.ego_velocity = (cfg.ego.poses[1].position - cfg.ego.poses[0].position) * cfg.frame_rate;
    }
  } else {
    s.ego = cfg.ego.start;
    s.ego_velocity = cfg.ego.velocity;
  }
  return s;
}

SceneState step(const SceneState& state, const SceneConfig& cfg) {
  const double dt = cfg.dt();
  SceneState next = state;
  next.frame_index = state.frame_index + 1;
  for (auto& a : next.agents) a.pose.position = a.pose.position + a.velocity * dt;
  const auto& poses = cfg.ego.poses;
  if (!poses.empty()) {
    const auto k = static_cast<std::size_t>(
        std::min<std::int64_t>(next.frame_index, static_cast<std::int64_t>(poses.size()) - 1));
    next.ego = poses[k];
    if (k + 1 < poses.size()) {
      next.ego_velocity = (poses[k + 1].position - poses[k].position) * cfg.frame_rate;
    } else if (k > 0) {
      next.ego_velocity = (poses[k].position - poses[k - 1].position) * cfg.frame_rate;
    }
  } else {
    next.ego.position = state.ego.position + state.ego_velocity * dt;
  }
  return next;
}

LabeledScan scan(const SceneState& state, const SceneConfig& cfg) {
  LabeledScan out;
  out.cloud.sensor_pose = state.ego;
  out.cloud.frame_index = state.frame_index;

  std::vector<OrientedBox> boxes;
  for (const auto& s : cfg.static_shapes) boxes.push_back(static_box(s));
  for (const auto& a : state.agents) boxes.push_back(a.box());

  auto rng = frame_rng(cfg.seed, state.frame_index, 0);
  std::normal_distribution<double> range_noise(0.0, cfg.sensor.range_noise_sigma);
  const auto& sensor = cfg.sensor;
  for (int i = 0; i < sensor.beam_count; ++i) {
    const double local = -0.5 * sensor.angular_span +
                         (i + 0.5) * sensor.angular_span / sensor.beam_count;
    const Vec2 dir = rotate({1.0, 0.0}, state.ego.heading + local);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& b : boxes) {
      if (const auto t = ray_hit(b, state.ego.position, dir)) best = std::min(best, *t);
    }
    if (!(best <= sensor.max_range)) continue;
    const double r = best + (sensor.range_noise_sigma > 0 ? range_noise(rng) : 0.0);
    out.cloud.points.push_back({static_cast<float>(r * std::cos(local)),
                                static_cast<float>(r * std::sin(local)),
                                static_cast<float>(sensor.return_height), 0.5F});
    out.ground.push_back(0);
  }
  if (cfg.ground_plane.enabled) {
    auto ground_rng = frame_rng(cfg.seed, state.frame_index, 1);
    emit_ground(cfg.ground_plane, ground_rng, out);
  }
  return out;
}

GroundTruth ground_truth(const SceneState& state, const SceneConfig& cfg, const GridSpec& spec) {
  spec.validate();
  GroundTruth t;
  t.spec = spec;
  t.origin = spec.snap(state.ego.position);
  t.occupied.assign(spec.cell_count(), 0);
  t.velocity.assign(spec.cell_count(), Vec2{});
  t.owner.assign(spec.cell_count(), -1);

  const double cs = spec.cell_size();
  const int n = spec.cells_per_side;
  auto paint = [&](const OrientedBox& box, int owner, Vec2 velocity) {
    const double reach = box.half_extent.norm();
    const Vec2 c = box.center - t.origin;
    const int c0 = std::max(0, static_cast<int>(std::floor(spec.col_coord(c.x - reach))));
    const int c1 = std::min(n - 1, static_cast<int>(std::floor(spec.col_coord(c.x + reach))));
    const int r0 = std::max(0, static_cast<int>(std::floor(spec.row_coord(c.y + reach))));
    const int r1 = std::min(n - 1, static_cast<int>(std::floor(spec.row_coord(c.y - reach))));
    for (int r = r0; r <= r1; ++r) {
      for (int col = c0; col <= c1; ++col) {
        const std::size_t idx = spec.flat(r, col);
        if (t.owner[idx] >= 0) continue;
        const Vec2 center = t.origin + spec.cell_center(r, col);
        const Vec2 half{cs * 0.5, cs * 0.5};
        if (!overlaps(box, center - half, center + half)) continue;
        t.occupied[idx] = 1;
        t.owner[idx] = owner;
        t.velocity[idx] = velocity - state.ego_velocity;
      }
    }
  };
  for (std::size_t i = 0; i < state.agents.size(); ++i) {
    paint(state.agents[i].box(), static_cast<int>(i), state.agents[i].velocity);
  }
  for (std::size_t i = 0; i < cfg.static_shapes.size(); ++i) {
    paint(static_box(cfg.static_shapes[i]), static_cast<int>(state.agents.size() + i), {});
  }
  return t;
}

io::GridTensor to_tensor(const GroundTruth& truth, std::int64_t frame_index, double timestamp) {
  io::GridTensor g;
  g.channels = 3;
  g.height = g.width = static_cast<std::uint32_t>(truth.spec.cells_per_side);
  g.frame_index = static_cast<std::uint64_t>(frame_index);
  g.timestamp = timestamp;
  g.values.resize(3 * g.plane_size());
  for (std::size_t i = 0; i < truth.occupied.size(); ++i) {
    g.channel(0)[i] = truth.occupied[i] ? 1.0F : 0.0F;
    g.channel(1)[i] = static_cast<float>(truth.velocity[i].x);
    g.channel(2)[i] = static_cast<float>(truth.velocity[i].y);
  }
  return g;
}

LabeledScan synthetic_ground_scene(const GroundSceneParams& params, std::uint64_t seed) {
  LabeledScan out;
  auto rng = frame_rng(seed, 0, 7);
  GroundPlaneSpec g;
  g.z_noise_sigma = params.z_noise_sigma;
  g.tilt = params.tilt;
  g.point_count = params.ground_points;
  g.radius = params.radius;
  emit_ground(g, rng, out);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> z(params.pillar_z_min, params.pillar_z_max);
  const double slope = std::tan(params.tilt);
  for (int i = 0; i < params.obstacle_points; ++i) {
    const double x = params.pillar_center.x + params.pillar_half.x * u(rng);
    const double y = params.pillar_center.y + params.pillar_half.y * u(rng);
    // Heights are measured above the (possibly tilted) ground surface.
    out.cloud.points.push_back({static_cast<float>(x), static_cast<float>(y),
                                static_cast<float>(slope * x + z(rng)), 0.5F});
    out.ground.push_back(0);
  }
  return out;
}

}  // namespace dogma::sim
