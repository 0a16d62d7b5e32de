// include/wordseg/gradcore.hpp

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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wordseg/tensor_io.hpp"

namespace wordseg {

/// Per-frame squared norm of the temporal gradient.
struct GradientMagnitudes {
  std::string utterance_id;
  std::vector<double> values;
};

struct PseudoLabels {
  std::string utterance_id;
  std::vector<std::uint8_t> labels;
};

struct Threshold {
  double theta = 0.0;
  double percentile = 20.0;
};

/// Interior frames use the halved central difference,
///   m_t = || (f_{t+1} - f_{t-1}) / 2 ||^2,
/// the two edge frames the unhalved one-sided difference. A single frame gives [0].
GradientMagnitudes gradient_magnitude(const FrameSequence& seq);

/// Nearest-rank percentile of the pooled values: the ceil(p/100 * n)-th smallest.
Threshold percentile_threshold(std::span<const double> pooled, double percentile);

/// labels[t] = 1 iff m_t > theta.
PseudoLabels pseudo_labels(const GradientMagnitudes& mags, const Threshold& thr);

}  // namespace wordseg
