// include/wordseg/metrics.hpp

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

struct MatchCounts {
  std::size_t n_ref = 0;
  std::size_t n_hyp = 0;
  std::size_t n_hit = 0;

  MatchCounts& operator+=(const MatchCounts& o) {
    n_ref += o.n_ref;
    n_hyp += o.n_hyp;
    n_hit += o.n_hit;
    return *this;
  }
};

/// Scores in percent. os and r_value are absent when they are undefined
/// (no hypothesised or no reference boundaries).
struct EvalReport {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::optional<double> os;
  std::optional<double> r_value;
  std::size_t n_ref = 0;
  std::size_t n_hyp = 0;
  std::size_t n_hit = 0;
  double tolerance_ms = 20.0;
};

struct OsRValue {
  double os = 0.0;       // fraction, recall / precision - 1
  double r_value = 0.0;  // fraction
};

/// Over-segmentation and R-value from precision and recall given as fractions.
/// Requires precision > 0.
OsRValue os_and_r_value(double precision, double recall);

/// One-to-one greedy matching: references in ascending order each take the
/// nearest still-unmatched hypothesis within the tolerance (ties: earlier hypothesis).
std::size_t match_boundaries(const BoundarySet& ref, const BoundarySet& hyp, double tolerance_ms,
                             double frame_period_ms);

EvalReport report_from_counts(const MatchCounts& counts, double tolerance_ms);

/// Micro-averaged report. Both corpora must cover the same utterance ids.
EvalReport compute_report(std::span<const BoundarySet> ref, std::span<const BoundarySet> hyp, double tolerance_ms,
                          double frame_period_ms);

std::string report_to_json(const EvalReport& report);
std::string report_to_table(const EvalReport& report);

}  // namespace wordseg
