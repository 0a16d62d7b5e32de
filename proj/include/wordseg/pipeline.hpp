// include/wordseg/pipeline.hpp

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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wordseg/classifier.hpp"
#include "wordseg/metrics.hpp"
#include "wordseg/nms.hpp"
#include "wordseg/tensor_io.hpp"

namespace wordseg {

struct TrainOptions {
  std::size_t num_train = 100;
  std::uint64_t seed = 0;
  double percentile = 20.0;
  double lambda = 1e7;
  Objective objective = Objective::ridge;
  LabelSource label_source = LabelSource::pseudo;
  LogisticOptions logistic;
  int jobs = 1;
};

struct TrainingReport {
  Objective objective = Objective::ridge;
  LabelSource label_source = LabelSource::pseudo;
  double lambda = 0.0;
  std::optional<Threshold> threshold;
  double positive_fraction = 0.0;
  std::size_t num_frames = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> utterance_ids;
  std::optional<std::size_t> iterations;
  std::optional<bool> converged;
};

struct TrainOutcome {
  LinearModel model;
  TrainingReport report;
};

TrainOutcome train_model(std::span<const Utterance> corpus, const TrainOptions& opts);
std::string training_report_to_json(const TrainingReport& report);

struct SegmentOptions {
  NmsConfig nms;
  /// Budget each utterance with its own reference boundary count (requires ground truth).
  bool word_count_from_reference = false;
  int jobs = 1;
};

std::vector<BoundaryRecord> segment_with_model(std::span<const Utterance> corpus, const LinearModel& model,
                                               const SegmentOptions& opts);
/// Peak picking directly on the gradient magnitudes, without a classifier.
std::vector<BoundaryRecord> segment_by_gradient(std::span<const Utterance> corpus, const SegmentOptions& opts);
/// Ground-truth boundaries of every utterance; DataError if any are missing.
std::vector<BoundaryRecord> reference_boundaries(std::span<const Utterance> corpus);

EvalReport evaluate(std::span<const BoundaryRecord> ref, std::span<const BoundaryRecord> hyp, double tolerance_ms);

enum class SweepParameter { percentile, num_train };

struct SweepOptions {
  SweepParameter parameter = SweepParameter::percentile;
  std::vector<double> values;
  TrainOptions train;
  SegmentOptions segment;
  double tolerance_ms = 20.0;
};

struct SweepRow {
  SweepParameter parameter = SweepParameter::percentile;
  double value = 0.0;
  std::optional<double> theta;
  double positive_fraction = 0.0;
  EvalReport report;
};

std::vector<SweepRow> sweep(std::span<const Utterance> corpus, const SweepOptions& opts);
std::string sweep_to_json(std::span<const SweepRow> rows);
std::string sweep_to_tsv(std::span<const SweepRow> rows);

}  // namespace wordseg
