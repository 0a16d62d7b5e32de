// src/nms.cpp

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

#include "wordseg/nms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "wordseg/errors.hpp"

namespace wordseg {

void NmsConfig::validate() const {
  if (!(tau_min_ms > 0.0) || !std::isfinite(tau_min_ms)) throw ArgumentError("tau_min_ms must be positive");
  if (fixed_word_count) {
    if (*fixed_word_count < 1) throw ArgumentError("fixed word count must be at least 1");
    return;
  }
  if (!(tau_avg_ms > 0.0) || !std::isfinite(tau_avg_ms)) throw ArgumentError("tau_avg_ms must be positive");
  if (tau_min_ms > tau_avg_ms) throw ArgumentError("tau_min_ms must not exceed tau_avg_ms");
}

std::size_t boundary_budget(std::size_t num_frames, double frame_period_ms, const NmsConfig& cfg) {
  if (cfg.fixed_word_count) return *cfg.fixed_word_count;
  const double words = std::floor(static_cast<double>(num_frames) * frame_period_ms / cfg.tau_avg_ms);
  return std::max<std::size_t>(1, static_cast<std::size_t>(words));
}

std::size_t suppression_radius(double frame_period_ms, const NmsConfig& cfg) {
  return static_cast<std::size_t>(std::round(cfg.tau_min_ms / frame_period_ms));
}

BoundarySet detect_peaks(std::span<const double> scores, double frame_period_ms, const NmsConfig& cfg,
                         std::string utterance_id) {
  if (scores.empty()) throw ArgumentError("detect_peaks: empty score vector");
  if (!(frame_period_ms > 0.0)) throw ArgumentError("detect_peaks: frame period must be positive");
  cfg.validate();
  for (double s : scores)
    if (!std::isfinite(s)) throw ArgumentError("detect_peaks: non-finite score");

  const std::size_t n = scores.size();
  const std::size_t budget = boundary_budget(n, frame_period_ms, cfg);
  const std::size_t radius = suppression_radius(frame_period_ms, cfg);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  // blocked[t] marks frames within the radius of an accepted frame.
  std::vector<char> blocked(n, 0);
  BoundarySet out{std::move(utterance_id), {}, n};
  for (std::size_t t : order) {
    if (out.frames.size() >= budget) break;
    if (blocked[t]) continue;
    out.frames.push_back(t);
    const std::size_t lo = t >= radius ? t - radius : 0;
    const std::size_t hi = std::min(n - 1, t + radius);
    std::fill(blocked.begin() + static_cast<std::ptrdiff_t>(lo), blocked.begin() + static_cast<std::ptrdiff_t>(hi) + 1, 1);
  }
  std::sort(out.frames.begin(), out.frames.end());
  return out;
}

}  // namespace wordseg
