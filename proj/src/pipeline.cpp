// src/pipeline.cpp

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

#include "wordseg/pipeline.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"
#include "wordseg/errors.hpp"
#include "wordseg/gradcore.hpp"
#include "wordseg/parallel.hpp"
#include "wordseg/version.hpp"

namespace wordseg {

using json = nlohmann::ordered_json;

namespace {

std::string to_string(LabelSource s) { return s == LabelSource::pseudo ? "pseudo" : "ground_truth"; }

std::string to_string(SweepParameter p) { return p == SweepParameter::percentile ? "percentile" : "num_train"; }

BoundarySet reference_of(const Utterance& u) {
  if (!u.ground_truth_ms)
    throw DataError("utterance '" + u.features.utterance_id + "' has no ground-truth boundaries");
  return boundaries_from_ms(u.features.utterance_id, *u.ground_truth_ms, u.features.num_frames,
                            u.features.frame_period_ms);
}

template <typename ScoreFn>
std::vector<BoundaryRecord> segment(std::span<const Utterance> corpus, const SegmentOptions& opts, ScoreFn&& scorer) {
  opts.nms.validate();
  std::vector<BoundaryRecord> out(corpus.size());
  parallel_for(corpus.size(), opts.jobs, [&](std::size_t i) {
    const auto& f = corpus[i].features;
    NmsConfig cfg = opts.nms;
    if (opts.word_count_from_reference) cfg.fixed_word_count = std::max<std::size_t>(1, reference_of(corpus[i]).frames.size());
    const auto scores = scorer(f);
    out[i].boundaries = detect_peaks(scores, f.frame_period_ms, cfg, f.utterance_id);
    out[i].frame_period_ms = f.frame_period_ms;
  });
  return out;
}

}  // namespace

TrainOutcome train_model(std::span<const Utterance> corpus, const TrainOptions& opts) {
  TrainingSetOptions ts_opts;
  ts_opts.num_utterances = opts.num_train;
  ts_opts.seed = opts.seed;
  ts_opts.label_source = opts.label_source;
  ts_opts.percentile = opts.percentile;
  ts_opts.jobs = opts.jobs;
  const TrainingSet ts = assemble_training_set(corpus, ts_opts);

  TrainOutcome out;
  if (opts.objective == Objective::ridge) {
    out.model = train_ridge(ts, opts.lambda);
  } else {
    const auto fit = train_logistic(ts, opts.lambda, opts.logistic);
    out.model = fit.model;
    out.report.iterations = fit.iterations;
    out.report.converged = fit.converged;
  }
  out.report.objective = opts.objective;
  out.report.label_source = opts.label_source;
  out.report.lambda = opts.lambda;
  out.report.threshold = ts.threshold;
  out.report.positive_fraction = ts.positive_fraction();
  out.report.num_frames = ts.rows();
  out.report.seed = opts.seed;
  out.report.utterance_ids = ts.utterance_ids;
  return out;
}

std::string training_report_to_json(const TrainingReport& r) {
  json j;
  j["objective"] = to_string(r.objective);
  j["label_source"] = to_string(r.label_source);
  j["lambda"] = r.lambda;
  j["percentile"] = r.threshold ? json(r.threshold->percentile) : json(nullptr);
  j["theta"] = r.threshold ? json(r.threshold->theta) : json(nullptr);
  j["positive_fraction"] = r.positive_fraction;
  j["num_frames"] = r.num_frames;
  j["num_train_utterances"] = r.utterance_ids.size();
  j["seed"] = r.seed;
  if (r.iterations) j["iterations"] = *r.iterations;
  if (r.converged) j["converged"] = *r.converged;
  j["train_utterances"] = r.utterance_ids;
  j["toolkit_version"] = kVersion;
  return j.dump(2) + "\n";
}

std::vector<BoundaryRecord> segment_with_model(std::span<const Utterance> corpus, const LinearModel& model,
                                               const SegmentOptions& opts) {
  return segment(corpus, opts, [&](const FrameSequence& f) { return score(model, f); });
}

std::vector<BoundaryRecord> segment_by_gradient(std::span<const Utterance> corpus, const SegmentOptions& opts) {
  return segment(corpus, opts, [](const FrameSequence& f) { return gradient_magnitude(f).values; });
}

std::vector<BoundaryRecord> reference_boundaries(std::span<const Utterance> corpus) {
  std::vector<BoundaryRecord> out;
  out.reserve(corpus.size());
  for (const auto& u : corpus) out.push_back({reference_of(u), u.features.frame_period_ms});
  return out;
}

EvalReport evaluate(std::span<const BoundaryRecord> ref, std::span<const BoundaryRecord> hyp, double tolerance_ms) {
  if (ref.empty()) throw ArgumentError("nothing to evaluate: reference set is empty");
  const double period = ref.front().frame_period_ms;
  std::vector<BoundarySet> r, h;
  for (const auto& x : ref) {
    if (x.frame_period_ms != period) throw ArgumentError("reference boundaries mix frame periods");
    r.push_back(x.boundaries);
  }
  for (const auto& x : hyp) {
    if (x.frame_period_ms != period) throw ArgumentError("hypothesis frame period differs from the reference");
    h.push_back(x.boundaries);
  }
  return compute_report(r, h, tolerance_ms, period);
}

std::vector<SweepRow> sweep(std::span<const Utterance> corpus, const SweepOptions& opts) {
  if (opts.values.empty()) throw ArgumentError("sweep needs at least one value");
  const auto refs = reference_boundaries(corpus);
  std::vector<SweepRow> rows;
  for (double v : opts.values) {
    TrainOptions t = opts.train;
    if (opts.parameter == SweepParameter::percentile) {
      t.percentile = v;
    } else {
      if (!(v >= 1.0) || v != std::floor(v)) throw ArgumentError("num_train sweep values must be positive integers");
      t.num_train = static_cast<std::size_t>(v);
    }
    const auto trained = train_model(corpus, t);
    const auto hyp = segment_with_model(corpus, trained.model, opts.segment);
    SweepRow row;
    row.parameter = opts.parameter;
    row.value = v;
    row.theta = trained.report.threshold ? std::optional<double>(trained.report.threshold->theta) : std::nullopt;
    row.positive_fraction = trained.report.positive_fraction;
    row.report = evaluate(refs, hyp, opts.tolerance_ms);
    rows.push_back(row);
  }
  return rows;
}

std::string sweep_to_json(std::span<const SweepRow> rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    json j;
    j["parameter"] = to_string(r.parameter);
    j["value"] = r.value;
    j["theta"] = r.theta ? json(*r.theta) : json(nullptr);
    j["positive_fraction"] = r.positive_fraction;
    j["report"] = json::parse(report_to_json(r.report));
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::string sweep_to_tsv(std::span<const SweepRow> rows) {
  std::string out = "parameter\tvalue\ttheta\tprecision\trecall\tf1\tos\tr_value\n";
  char buf[256];
  auto opt = [](const std::optional<double>& v) { return v ? *v : std::nan(""); };
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%s\t%g\t%.9g\t%.4f\t%.4f\t%.4f\t%.4f\t%.4f\n", to_string(r.parameter).c_str(),
                  r.value, opt(r.theta), r.report.precision, r.report.recall, r.report.f1, opt(r.report.os),
                  opt(r.report.r_value));
    out += buf;
  }
  return out;
}

}  // namespace wordseg
