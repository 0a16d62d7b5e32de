// src/gradcore.cpp

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

#include "wordseg/gradcore.hpp"

#include <algorithm>
#include <cmath>

#include "wordseg/errors.hpp"
#include "wordseg/kernels.hpp"

namespace wordseg {

GradientMagnitudes gradient_magnitude(const FrameSequence& seq) {
  if (seq.num_frames == 0) throw ArgumentError("gradient_magnitude: empty sequence");
  const std::size_t n = seq.num_frames;
  const std::size_t d = seq.dim;
  const auto& k = kernels::active();
  GradientMagnitudes out{seq.utterance_id, std::vector<double>(n, 0.0)};
  if (n == 1) return out;
  const float* f = seq.data.data();
  out.values[0] = k.squared_distance(f + d, f, d);
  out.values[n - 1] = k.squared_distance(f + (n - 1) * d, f + (n - 2) * d, d);
  for (std::size_t t = 1; t + 1 < n; ++t)
    out.values[t] = 0.25 * k.squared_distance(f + (t + 1) * d, f + (t - 1) * d, d);
  return out;
}

Threshold percentile_threshold(std::span<const double> pooled, double percentile) {
  if (pooled.empty()) throw ArgumentError("percentile_threshold: no magnitudes to pool");
  if (!(percentile > 0.0 && percentile < 100.0))
    throw ArgumentError("percentile must lie strictly between 0 and 100");
  const std::size_t n = pooled.size();
  // p*n first so that integral products divide exactly.
  auto rank = static_cast<std::size_t>(std::ceil(percentile * static_cast<double>(n) / 100.0));
  rank = std::clamp<std::size_t>(rank, 1, n);
  std::vector<double> values(pooled.begin(), pooled.end());
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(rank - 1), values.end());
  return Threshold{values[rank - 1], percentile};
}

PseudoLabels pseudo_labels(const GradientMagnitudes& mags, const Threshold& thr) {
  if (!std::isfinite(thr.theta)) throw ArgumentError("pseudo_labels: threshold must be finite");
  PseudoLabels out{mags.utterance_id, std::vector<std::uint8_t>(mags.values.size())};
  for (std::size_t t = 0; t < mags.values.size(); ++t) out.labels[t] = mags.values[t] > thr.theta ? 1 : 0;
  return out;
}

}  // namespace wordseg
