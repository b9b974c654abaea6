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
#include <span>
#include <string>
#include <vector>

#include "dogma/predict/predictors.hpp"

namespace dogma::predict {

/// Streaming mean and variance; merge() is Chan's parallel update, so
/// partial results can be combined in any order.
struct Moments {
  std::int64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x);
  void merge(const Moments& other);
  double sample_variance() const;
  /// Sample standard deviation over sqrt(count); 0 below two samples.
  double standard_error() const;
};

struct MetricsRow {
  int step = 0;
  double seconds = 0.0;
  std::string predictor;
  double mean_mse = 0.0;
  double std_error = 0.0;
};

struct MetricsTable {
  std::vector<MetricsRow> rows;

  /// Rows of one predictor in step order.
  std::vector<MetricsRow> curve(const std::string& predictor) const;
};

/// Per-step MSE of one predictor on one sequence (kHorizon values).
std::vector<double> sequence_errors(const Sequence& seq, const Predictor& predictor, double dt);

/// Seeds every predictor with frames 1-5 of each sequence and scores steps
/// 6-20. Throws kBadSequenceLength unless every sequence has exactly 20
/// frames.
MetricsTable evaluate(std::span<const Sequence> sequences,
                      std::span<const Predictor* const> predictors, double dt);

/// "step,seconds,predictor,mean_mse,stderr" with shortest round-trip numbers.
std::string to_csv(const MetricsTable& table);

/// Line plot of the MSE curves with shaded +-stderr bands.
std::string to_svg(const MetricsTable& table);

struct ExportHeader {
  std::int64_t count = 0;
  int seq_len = kSequenceLength;
  int channels = 0;
  int height = 0;
  int width = 0;
  std::string dtype = "f32-le";
  std::uint64_t seed = 0;
};

/// One JSON header line, then f32 LE data ordered
/// [sequence][time][channel][row][column].
void export_sequences(std::span<const Sequence> sequences, const std::filesystem::path& path,
                      std::uint64_t seed);

struct ImportedSequences {
  ExportHeader header;
  std::vector<float> data;
};

ImportedSequences import_sequences(const std::filesystem::path& path);

}  // namespace dogma::predict
