// include/wordseg/nms.hpp

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
#include <optional>
#include <span>
#include <string>

#include "wordseg/tensor_io.hpp"

namespace wordseg {

struct NmsConfig {
  double tau_avg_ms = 300.0;  // average word duration; budgets the boundary count
  double tau_min_ms = 60.0;   // minimum word duration; suppression radius
  std::optional<std::size_t> fixed_word_count;  // overrides the duration budget

  void validate() const;
};

/// Number of boundaries to select: fixed_word_count if set, else
/// floor(N * frame_period / tau_avg), at least 1.
std::size_t boundary_budget(std::size_t num_frames, double frame_period_ms, const NmsConfig& cfg);

/// round(tau_min / frame_period) frames.
std::size_t suppression_radius(double frame_period_ms, const NmsConfig& cfg);

/// Greedy non-maxima suppression. Frames are visited by descending score (ties:
/// lower index first) and kept while fewer than the budget are kept and the
/// frame is more than the suppression radius away from every kept frame.
BoundarySet detect_peaks(std::span<const double> scores, double frame_period_ms, const NmsConfig& cfg,
                         std::string utterance_id = {});

}  // namespace wordseg
