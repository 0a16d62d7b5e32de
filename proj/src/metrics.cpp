// src/metrics.cpp

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

#include "wordseg/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <vector>

#include "json.hpp"
#include "wordseg/errors.hpp"

namespace wordseg {

using json = nlohmann::ordered_json;

OsRValue os_and_r_value(double precision, double recall) {
  if (!(precision > 0.0)) throw ArgumentError("over-segmentation is undefined for zero precision");
  OsRValue out;
  out.os = recall / precision - 1.0;
  const double r1 = std::sqrt((1.0 - recall) * (1.0 - recall) + out.os * out.os);
  const double r2 = (-out.os + recall - 1.0) / std::numbers::sqrt2;
  out.r_value = 1.0 - (std::abs(r1) + std::abs(r2)) / 2.0;
  return out;
}

std::size_t match_boundaries(const BoundarySet& ref, const BoundarySet& hyp, double tolerance_ms,
                             double frame_period_ms) {
  if (!(tolerance_ms >= 0.0)) throw ArgumentError("tolerance must be non-negative");
  if (!(frame_period_ms > 0.0)) throw ArgumentError("frame period must be positive");
  const auto& h = hyp.frames;
  std::vector<char> used(h.size(), 0);
  const auto reach = static_cast<std::size_t>(std::ceil(tolerance_ms / frame_period_ms));
  auto within = [&](std::size_t a, std::size_t b) {
    const std::size_t gap = a > b ? a - b : b - a;
    return static_cast<double>(gap) * frame_period_ms <= tolerance_ms;
  };

  std::size_t hits = 0;
  for (std::size_t r : ref.frames) {
    const std::size_t lo_frame = r >= reach ? r - reach : 0;
    auto it = std::lower_bound(h.begin(), h.end(), lo_frame);
    std::size_t best = h.size();
    std::size_t best_gap = 0;
    for (; it != h.end() && *it <= r + reach; ++it) {
      const auto j = static_cast<std::size_t>(it - h.begin());
      if (used[j] || !within(*it, r)) continue;
      const std::size_t gap = *it > r ? *it - r : r - *it;
      if (best == h.size() || gap < best_gap) {
        best = j;
        best_gap = gap;
      }
    }
    if (best != h.size()) {
      used[best] = 1;
      ++hits;
    }
  }
  return hits;
}

EvalReport report_from_counts(const MatchCounts& c, double tolerance_ms) {
  EvalReport r;
  r.n_ref = c.n_ref;
  r.n_hyp = c.n_hyp;
  r.n_hit = c.n_hit;
  r.tolerance_ms = tolerance_ms;
  const double p = c.n_hyp > 0 ? static_cast<double>(c.n_hit) / static_cast<double>(c.n_hyp) : 0.0;
  const double rc = c.n_ref > 0 ? static_cast<double>(c.n_hit) / static_cast<double>(c.n_ref) : 0.0;
  r.precision = 100.0 * p;
  r.recall = 100.0 * rc;
  r.f1 = (p + rc) > 0.0 ? 100.0 * 2.0 * p * rc / (p + rc) : 0.0;
  if (c.n_hyp > 0 && c.n_ref > 0) {
    if (p > 0.0) {
      const auto v = os_and_r_value(p, rc);
      r.os = 100.0 * v.os;
      r.r_value = 100.0 * v.r_value;
    } else {
      // No hits: recall/precision is 0/0, use the count form instead.
      const double os = static_cast<double>(c.n_hyp) / static_cast<double>(c.n_ref) - 1.0;
      const double r1 = std::sqrt(1.0 + os * os);
      const double r2 = (-os - 1.0) / std::numbers::sqrt2;
      r.os = 100.0 * os;
      r.r_value = 100.0 * (1.0 - (std::abs(r1) + std::abs(r2)) / 2.0);
    }
  }
  return r;
}

EvalReport compute_report(std::span<const BoundarySet> ref, std::span<const BoundarySet> hyp, double tolerance_ms,
                          double frame_period_ms) {
  std::map<std::string, const BoundarySet*> by_id;
  for (const auto& h : hyp)
    if (!by_id.emplace(h.utterance_id, &h).second)
      throw ArgumentError("duplicate hypothesis utterance '" + h.utterance_id + "'");
  if (ref.size() != hyp.size()) throw ArgumentError("reference and hypothesis cover different utterance sets");
  MatchCounts total;
  for (const auto& r : ref) {
    auto it = by_id.find(r.utterance_id);
    if (it == by_id.end()) throw ArgumentError("no hypothesis for utterance '" + r.utterance_id + "'");
    total.n_ref += r.frames.size();
    total.n_hyp += it->second->frames.size();
    total.n_hit += match_boundaries(r, *it->second, tolerance_ms, frame_period_ms);
  }
  return report_from_counts(total, tolerance_ms);
}

std::string report_to_json(const EvalReport& r) {
  json j;
  j["precision"] = r.precision;
  j["recall"] = r.recall;
  j["f1"] = r.f1;
  j["os"] = r.os ? json(*r.os) : json(nullptr);
  j["r_value"] = r.r_value ? json(*r.r_value) : json(nullptr);
  j["n_ref"] = r.n_ref;
  j["n_hyp"] = r.n_hyp;
  j["n_hit"] = r.n_hit;
  j["tolerance_ms"] = r.tolerance_ms;
  return j.dump(2) + "\n";
}

std::string report_to_table(const EvalReport& r) {
  auto opt = [](const std::optional<double>& v) {
    char buf[32];
    if (!v) return std::string("n/a");
    std::snprintf(buf, sizeof buf, "%.2f", *v);
    return std::string(buf);
  };
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "%-10s %9s %9s %9s %9s %9s\n"
                "%-10s %9.2f %9.2f %9.2f %9s %9s\n"
                "n_ref=%zu n_hyp=%zu n_hit=%zu tolerance_ms=%g\n",
                "", "precision", "recall", "f1", "os", "r_value", "boundary", r.precision, r.recall, r.f1,
                opt(r.os).c_str(), opt(r.r_value).c_str(), r.n_ref, r.n_hyp, r.n_hit, r.tolerance_ms);
  return buf;
}

}  // namespace wordseg
