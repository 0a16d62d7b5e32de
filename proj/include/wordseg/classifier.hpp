// include/wordseg/classifier.hpp

// Copyright 2026   The wordseg Authors

// See the LICENSE file for clarification regarding multiple authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wordseg/gradcore.hpp"
#include "wordseg/tensor_io.hpp"

namespace wordseg {

enum class Objective { ridge, logistic };
enum class LabelSource { pseudo, ground_truth };

std::string to_string(Objective o);
Objective parse_objective(const std::string& text);

/// Affine frame scorer: s_t = w . f_t + bias.
struct LinearModel {
  std::vector<double> weights;
  double bias = 0.0;
  double lambda = 0.0;
  Objective objective = Objective::ridge;

  std::size_t feature_dim() const { return weights.size(); }
};

/// Stacked frames of the selected training utterances and their {0,1} targets.
struct TrainingSet {
  std::size_t dim = 0;
  std::vector<float> features;  // rows() x dim, row-major
  std::vector<std::uint8_t> labels;
  std::vector<std::string> utterance_ids;
  /// Set in pseudo-label mode.
  std::optional<Threshold> threshold;

  std::size_t rows() const { return labels.size(); }
  std::span<const float> row(std::size_t i) const { return {features.data() + i * dim, dim}; }
  double positive_fraction() const;
};

struct TrainingSetOptions {
  std::size_t num_utterances = 100;
  std::uint64_t seed = 0;
  LabelSource label_source = LabelSource::pseudo;
  double percentile = 20.0;
  int jobs = 1;
};

/// Samples utterances without replacement (seeded), stacks their frames in
/// corpus order and labels them. Pseudo mode never touches ground truth.
TrainingSet assemble_training_set(std::span<const Utterance> corpus, const TrainingSetOptions& opts);
TrainingSet assemble_training_set(const DatasetManifest& manifest, const TrainingSetOptions& opts);

/// Exact ridge fit with an unregularized bias, via the centered normal equations.
LinearModel train_ridge(const TrainingSet& ts, double lambda);

struct LogisticOptions {
  std::size_t max_iters = 100;
  double tol = 1e-8;
};

struct LogisticFit {
  LinearModel model;
  std::size_t iterations = 0;
  bool converged = false;
  double gradient_norm = 0.0;
};

/// Newton's method on sum_i [log(1 + e^{z_i}) - y_i z_i] + lambda ||w||^2.
LogisticFit train_logistic(const TrainingSet& ts, double lambda, const LogisticOptions& opts = {});

std::vector<double> score(const LinearModel& model, const FrameSequence& seq);

void write_model(const LinearModel& model, const std::filesystem::path& path);
LinearModel read_model(const std::filesystem::path& path);
std::string model_to_json(const LinearModel& model);

}  // namespace wordseg
