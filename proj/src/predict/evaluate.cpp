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

#include "dogma/predict/evaluate.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "dogma/io/binary.hpp"
#include "dogma/io/files.hpp"
#include "dogma/io/json_util.hpp"

namespace dogma::predict {

void Moments::add(double x) {
  ++count;
  const double delta = x - mean;
  mean += delta / static_cast<double>(count);
  m2 += delta * (x - mean);
}

void Moments::merge(const Moments& o) {
  if (o.count == 0) return;
  if (count == 0) {
    *this = o;
    return;
  }
  const double n = static_cast<double>(count + o.count);
  const double delta = o.mean - mean;
  mean += delta * static_cast<double>(o.count) / n;
  m2 += o.m2 + delta * delta * static_cast<double>(count) * static_cast<double>(o.count) / n;
  count += o.count;
}

double Moments::sample_variance() const {
  return count < 2 ? 0.0 : m2 / static_cast<double>(count - 1);
}

double Moments::standard_error() const {
  return count < 2 ? 0.0 : std::sqrt(sample_variance() / static_cast<double>(count));
}

std::vector<MetricsRow> MetricsTable::curve(const std::string& predictor) const {
  std::vector<MetricsRow> out;
  for (const auto& r : rows) {
    if (r.predictor == predictor) out.push_back(r);
  }
  std::sort(out.begin(), out.end(),
            [](const MetricsRow& a, const MetricsRow& b) { return a.step < b.step; });
  return out;
}

std::vector<double> sequence_errors(const Sequence& seq, const Predictor& predictor,
                                    double dt) {
  if (seq.frames.size() != static_cast<std::size_t>(kSequenceLength)) {
    fail(ErrorCode::kBadSequenceLength, "sequence has " + std::to_string(seq.frames.size()) +
                                            " frames, expected " +
                                            std::to_string(kSequenceLength));
  }
  const auto forecasts = predictor.predict(seq, kHorizon, dt);
  if (forecasts.size() != static_cast<std::size_t>(kHorizon)) {
    fail(ErrorCode::kBadSequenceLength, predictor.id() + " returned " +
                                            std::to_string(forecasts.size()) +
                                            " forecasts, expected 15");
  }
  std::vector<double> out(kHorizon);
  for (int k = 0; k < kHorizon; ++k) {
    out[k] = mse(forecasts[k], seq.target(k + 1));
  }
  return out;
}

MetricsTable evaluate(std::span<const Sequence> sequences,
                      std::span<const Predictor* const> predictors, double dt) {
  for (std::size_t s = 0; s < sequences.size(); ++s) {
    if (sequences[s].frames.size() != static_cast<std::size_t>(kSequenceLength)) {
      fail(ErrorCode::kBadSequenceLength,
           "sequence " + std::to_string(s) + " has " +
               std::to_string(sequences[s].frames.size()) + " frames, expected " +
               std::to_string(kSequenceLength));
    }
  }
  MetricsTable table;
  for (const Predictor* p : predictors) {
    std::vector<Moments> steps(kHorizon);
    for (const auto& seq : sequences) {
      const auto err = sequence_errors(seq, *p, dt);
      for (int k = 0; k < kHorizon; ++k) steps[k].add(err[k]);
    }
    for (int k = 0; k < kHorizon; ++k) {
      MetricsRow row;
      row.step = k + 1;
      row.seconds = std::round((k + 1) * dt * 1e9) / 1e9;
      row.predictor = p->id();
      row.mean_mse = steps[k].mean;
      row.std_error = steps[k].standard_error();
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

std::string to_csv(const MetricsTable& table) {
  std::string out = "step,seconds,predictor,mean_mse,stderr\n";
  for (const auto& r : table.rows) {
    out += fmt::format("{},{},{},{},{}\n", r.step, r.seconds, r.predictor, r.mean_mse,
                       r.std_error);
  }
  return out;
}

std::string to_svg(const MetricsTable& table) {
  constexpr double kW = 640, kH = 400, kLeft = 70, kRight = 20, kTop = 20, kBottom = 50;
  static const char* const kColors[] = {"#222222", "#1f77b4", "#d62728", "#2ca02c",
                                        "#9467bd", "#ff7f0e"};
  std::vector<std::string> names;
  double y_max = 0.0;
  int x_max = 1;
  for (const auto& r : table.rows) {
    if (std::find(names.begin(), names.end(), r.predictor) == names.end()) {
      names.push_back(r.predictor);
    }
    y_max = std::max(y_max, r.mean_mse + r.std_error);
    x_max = std::max(x_max, r.step);
  }
  if (!(y_max > 0.0)) y_max = 1.0;
  y_max *= 1.1;
  auto px = [&](double step) { return kLeft + (step - 1) / std::max(1, x_max - 1) * (kW - kLeft - kRight); };
  auto py = [&](double v) { return kTop + (1.0 - v / y_max) * (kH - kTop - kBottom); };

  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" "
      "font-family=\"sans-serif\" font-size=\"12\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
      kW, kH);
  svg += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
                     kLeft, kH - kBottom, kW - kRight, kH - kBottom);
  svg += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
                     kLeft, kTop, kLeft, kH - kBottom);
  for (int i = 0; i <= 4; ++i) {
    const double v = y_max * i / 4.0;
    svg += fmt::format("<text x=\"{}\" y=\"{:.1f}\" text-anchor=\"end\">{:.4f}</text>\n",
                       kLeft - 6, py(v) + 4, v);
  }
  for (int s = 1; s <= x_max; ++s) {
    const auto curve0 = table.rows.empty() ? std::vector<MetricsRow>{} : table.curve(names[0]);
    const double sec = s <= static_cast<int>(curve0.size()) ? curve0[s - 1].seconds : s;
    svg += fmt::format("<text x=\"{:.1f}\" y=\"{}\" text-anchor=\"middle\">{:.1f}</text>\n",
                       px(s), kH - kBottom + 16, sec);
  }
  svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">prediction time (s)</text>\n",
                     (kLeft + kW - kRight) / 2, kH - 8);
  svg += fmt::format(
      "<text x=\"14\" y=\"{}\" transform=\"rotate(-90 14 {})\" text-anchor=\"middle\">MSE</text>\n",
      (kTop + kH - kBottom) / 2, (kTop + kH - kBottom) / 2);

  for (std::size_t i = 0; i < names.size(); ++i) {
    const char* color = kColors[i % std::size(kColors)];
    const auto rows = table.curve(names[i]);
    std::string band, line;
    for (const auto& r : rows) {
      band += fmt::format("{:.2f},{:.2f} ", px(r.step), py(r.mean_mse + r.std_error));
      line += fmt::format("{:.2f},{:.2f} ", px(r.step), py(r.mean_mse));
    }
    for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
      band += fmt::format("{:.2f},{:.2f} ", px(it->step),
                          py(std::max(0.0, it->mean_mse - it->std_error)));
    }
    svg += fmt::format("<polygon points=\"{}\" fill=\"{}\" fill-opacity=\"0.2\" stroke=\"none\"/>\n",
                       band, color);
    svg += fmt::format("<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2\"/>\n",
                       line, color);
    svg += fmt::format("<text x=\"{}\" y=\"{}\" fill=\"{}\">{}</text>\n", kLeft + 10,
                       kTop + 14 + 16 * static_cast<double>(i), color, names[i]);
  }
  svg += "</svg>\n";
  return svg;
}

void export_sequences(std::span<const Sequence> sequences, const std::filesystem::path& path,
                      std::uint64_t seed) {
  ExportHeader h;
  h.count = static_cast<std::int64_t>(sequences.size());
  h.seed = seed;
  for (const auto& seq : sequences) {
    if (seq.frames.size() != static_cast<std::size_t>(kSequenceLength)) {
      fail(ErrorCode::kBadSequenceLength, "export: every sequence needs 20 frames");
    }
    for (const auto& f : seq.frames) {
      if (h.channels == 0) {
        h.channels = f.channels();
        h.height = h.width = f.spec.cells_per_side;
      }
      if (f.channels() != h.channels || f.spec.cells_per_side != h.height) {
        fail(ErrorCode::kSpecMismatch, "export: frames differ in channel count or size");
      }
    }
  }
  const io::Json header{{"count", h.count},   {"seq_len", h.seq_len}, {"channels", h.channels},
                        {"height", h.height}, {"width", h.width},     {"dtype", h.dtype},
                        {"seed", h.seed}};
  const std::string line = header.dump() + "\n";
  io::Bytes out;
  out.reserve(line.size() + static_cast<std::size_t>(h.count) * kSequenceLength * h.channels *
                                h.height * h.width * 4);
  for (char c : line) out.push_back(static_cast<std::byte>(c));
  for (const auto& seq : sequences) {
    for (const auto& f : seq.frames) {
      for (double v : f.data) io::put_le(out, static_cast<float>(v));
    }
  }
  io::write_bytes(path, out);
}

ImportedSequences import_sequences(const std::filesystem::path& path) {
  const io::Bytes bytes = io::read_bytes(path);
  const auto nl = std::find(bytes.begin(), bytes.end(), std::byte{'\n'});
  if (nl == bytes.end()) fail(ErrorCode::kFormat, path.string() + ": missing header line");
  const std::string line(reinterpret_cast<const char*>(bytes.data()),
                         static_cast<std::size_t>(nl - bytes.begin()));
  const io::Json j = io::parse_json(line, path.string());
  io::StrictObject o(j, path.string());
  ImportedSequences out;
  auto& h = out.header;
  h.count = o.require<std::int64_t>("count");
  h.seq_len = o.require<int>("seq_len");
  h.channels = o.require<int>("channels");
  h.height = o.require<int>("height");
  h.width = o.require<int>("width");
  h.dtype = o.require<std::string>("dtype");
  h.seed = o.require<std::uint64_t>("seed");
  o.finish();
  if (h.dtype != "f32-le") fail(ErrorCode::kFormat, path.string() + ": unsupported dtype");
  const std::size_t values = static_cast<std::size_t>(h.count) * h.seq_len * h.channels *
                             h.height * h.width;
  const auto payload =
      std::span<const std::byte>(bytes).subspan(static_cast<std::size_t>(nl - bytes.begin()) + 1);
  if (payload.size() != values * 4) {
    fail(ErrorCode::kFormat, path.string() + ": payload holds " +
                                 std::to_string(payload.size()) + " bytes, expected " +
                                 std::to_string(values * 4));
  }
  io::LeReader in(payload);
  out.data.resize(values);
  for (auto& v : out.data) v = in.get<float>();
  return out;
}

}  // namespace dogma::predict
