// tools/wordseg_main.cpp

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

// wordseg: unsupervised word segmentation of frame-embedding corpora.
//
// Exit codes: 0 success, 1 internal error, 2 usage or argument error,
// 3 I/O error, 4 format error, 5 data error.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wordseg/classifier.hpp"
#include "wordseg/errors.hpp"
#include "wordseg/kernels.hpp"
#include "wordseg/metrics.hpp"
#include "wordseg/pipeline.hpp"
#include "wordseg/synth.hpp"
#include "wordseg/tensor_io.hpp"
#include "wordseg/version.hpp"

namespace fs = std::filesystem;
using namespace wordseg;

namespace {

enum ExitCode { kOk = 0, kInternal = 1, kUsage = 2, kIo = 3, kFormat = 4, kData = 5 };

struct CommonFlags {
  std::string manifest;
  std::string out;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string isa = "auto";
};

struct TrainFlags {
  std::size_t num_train = 100;
  double percentile = 20.0;
  double lambda = 1e7;
  std::string objective = "ridge";
  std::size_t logistic_max_iters = 100;
  double logistic_tol = 1e-8;
};

struct NmsFlags {
  double tau_avg_ms = 300.0;
  double tau_min_ms = 60.0;
  std::size_t num_words = 0;
  bool from_reference = false;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool manifest, bool out_required = true) {
  if (manifest) cmd->add_option("--manifest", f.manifest, "Dataset manifest (JSON lines)")->required();
  auto* out = cmd->add_option("--out", f.out, "Output path");
  if (out_required) out->required();
  cmd->add_option("--seed", f.seed, "Random seed")->capture_default_str();
  cmd->add_option("--jobs", f.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--isa", f.isa, "Kernel ISA: auto, scalar, avx2, neon")->capture_default_str();
}

void add_train(CLI::App* cmd, TrainFlags& f) {
  cmd->add_option("--num-train", f.num_train, "Training utterances sampled from the manifest")->capture_default_str();
  cmd->add_option("--theta-percentile", f.percentile, "Pseudo-label threshold percentile")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 100.0));
  cmd->add_option("--ridge-lambda", f.lambda, "L2 regularization strength")->capture_default_str();
  cmd->add_option("--objective", f.objective, "ridge or logistic")
      ->capture_default_str()
      ->check(CLI::IsMember({"ridge", "logistic"}));
  cmd->add_option("--logistic-max-iters", f.logistic_max_iters, "Newton iteration budget")->capture_default_str();
  cmd->add_option("--logistic-tol", f.logistic_tol, "Gradient-norm convergence tolerance")->capture_default_str();
}

void add_nms(CLI::App* cmd, NmsFlags& f) {
  cmd->add_option("--tau-avg-ms", f.tau_avg_ms, "Average word duration (boundary budget)")->capture_default_str();
  cmd->add_option("--tau-min-ms", f.tau_min_ms, "Minimum word duration (suppression radius)")->capture_default_str();
  cmd->add_option("--num-words", f.num_words, "Fixed number of boundaries per utterance (0 = use tau-avg)")
      ->capture_default_str();
  cmd->add_flag("--num-words-from-reference", f.from_reference,
                "Use each utterance's ground-truth boundary count as its budget");
}

void apply_isa(const CommonFlags& f) {
  if (f.isa != "auto") kernels::select(kernels::parse_isa(f.isa));
}

TrainOptions train_options(const CommonFlags& c, const TrainFlags& t) {
  TrainOptions o;
  o.num_train = t.num_train;
  o.seed = c.seed;
  o.percentile = t.percentile;
  o.lambda = t.lambda;
  o.objective = parse_objective(t.objective);
  o.logistic.max_iters = t.logistic_max_iters;
  o.logistic.tol = t.logistic_tol;
  o.jobs = c.jobs;
  return o;
}

SegmentOptions segment_options(const CommonFlags& c, const NmsFlags& n) {
  SegmentOptions o;
  o.nms.tau_avg_ms = n.tau_avg_ms;
  o.nms.tau_min_ms = n.tau_min_ms;
  if (n.num_words > 0) o.nms.fixed_word_count = n.num_words;
  o.word_count_from_reference = n.from_reference;
  o.jobs = c.jobs;
  return o;
}

std::vector<Utterance> load(const std::string& manifest, int jobs) {
  return load_corpus(read_manifest(manifest), jobs);
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

std::string default_sibling(const std::string& path, const std::string& suffix) { return path + suffix; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unsupervised word segmentation from frame embeddings"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  // synth
  CommonFlags synth_c;
  SynthConfig synth_cfg;
  std::string synth_config_file;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic labelled corpus");
  add_common(synth, synth_c, false);
  synth->add_option("--config", synth_config_file, "JSON synth config; flags given explicitly override it");
  synth->add_option("--num-utterances", synth_cfg.num_utterances)->capture_default_str();
  synth->add_option("--dim", synth_cfg.dim)->capture_default_str();
  synth->add_option("--frame-period-ms", synth_cfg.frame_period_ms)->capture_default_str();
  synth->add_option("--word-len-min", synth_cfg.word_len_frames.min)->capture_default_str();
  synth->add_option("--word-len-max", synth_cfg.word_len_frames.max)->capture_default_str();
  synth->add_option("--words-min", synth_cfg.words_per_utterance.min)->capture_default_str();
  synth->add_option("--words-max", synth_cfg.words_per_utterance.max)->capture_default_str();
  synth->add_option("--vocab-size", synth_cfg.vocab_size)->capture_default_str();
  synth->add_option("--centroid-scale", synth_cfg.centroid_scale)->capture_default_str();
  synth->add_option("--boundary-strength", synth_cfg.boundary_strength)->capture_default_str();
  synth->add_option("--consistency", synth_cfg.boundary_direction_consistency)->capture_default_str();
  synth->add_option("--spike-rate", synth_cfg.within_word_spike_rate)->capture_default_str();
  synth->add_option("--spike-strength", synth_cfg.within_word_spike_strength)->capture_default_str();
  synth->add_option("--noise-sigma", synth_cfg.noise_sigma)->capture_default_str();

  // train
  CommonFlags train_c;
  TrainFlags train_t;
  std::string train_report;
  auto* train = app.add_subcommand("train", "Train a frame classifier on gradient pseudo-labels");
  add_common(train, train_c, true);
  add_train(train, train_t);
  train->add_option("--report", train_report, "Training report path (default: <out>.report.json)");

  // segment
  CommonFlags seg_c;
  NmsFlags seg_n;
  std::string seg_model;
  auto* seg = app.add_subcommand("segment", "Score utterances with a model and pick boundaries");
  add_common(seg, seg_c, true);
  add_nms(seg, seg_n);
  seg->add_option("--model", seg_model, "Model file from `train`")->required();

  // eval
  CommonFlags eval_c;
  std::string eval_ref, eval_hyp;
  double eval_tol = 20.0;
  auto* ev = app.add_subcommand("eval", "Score hypothesised boundaries against a reference");
  add_common(ev, eval_c, false, false);
  ev->add_option("--ref", eval_ref, "Reference boundary file");
  ev->add_option("--manifest", eval_c.manifest, "Take the reference from manifest ground truth");
  ev->add_option("--hyp", eval_hyp, "Hypothesis boundary file")->required();
  ev->add_option("--frame-tolerance-ms", eval_tol, "Matching tolerance")->capture_default_str();

  // baseline-grad
  CommonFlags base_c;
  NmsFlags base_n;
  auto* base = app.add_subcommand("baseline-grad", "Peak-pick raw gradient magnitudes (no classifier)");
  add_common(base, base_c, true);
  add_nms(base, base_n);

  // supervised
  CommonFlags sup_c;
  TrainFlags sup_t;
  NmsFlags sup_n;
  std::string sup_eval_manifest;
  double sup_tol = 20.0;
  auto* sup = app.add_subcommand("supervised", "Ridge probe on ground-truth boundary labels, then segment and score");
  add_common(sup, sup_c, true);
  add_train(sup, sup_t);
  add_nms(sup, sup_n);
  sup->add_option("--eval-manifest", sup_eval_manifest, "Evaluation corpus (default: --manifest)");
  sup->add_option("--frame-tolerance-ms", sup_tol, "Matching tolerance")->capture_default_str();

  // sweep
  CommonFlags sw_c;
  TrainFlags sw_t;
  NmsFlags sw_n;
  std::string sw_param = "percentile", sw_data, sw_eval_manifest;
  std::vector<double> sw_values;
  double sw_tol = 20.0;
  auto* sw = app.add_subcommand("sweep", "Train, segment and score across a parameter grid");
  add_common(sw, sw_c, true);
  add_train(sw, sw_t);
  add_nms(sw, sw_n);
  sw->add_option("--parameter", sw_param, "percentile or num-train")
      ->capture_default_str()
      ->check(CLI::IsMember({"percentile", "num-train"}));
  sw->add_option("--values", sw_values, "Comma-separated grid (default: 10..90 for percentile)")->delimiter(',');
  sw->add_option("--data", sw_data, "Tab-separated plot data (default: <out>.tsv)");
  sw->add_option("--eval-manifest", sw_eval_manifest, "Evaluation corpus (default: --manifest)");
  sw->add_option("--frame-tolerance-ms", sw_tol, "Matching tolerance")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*synth) {
      apply_isa(synth_c);
      SynthConfig cfg = synth_cfg;
      if (!synth_config_file.empty()) {
        cfg = synth_config_from_json(read_text_file(synth_config_file));
        // Explicit flags win over the file.
        auto given = [&](const char* name) { return synth->get_option(name)->count() > 0; };
        if (given("--num-utterances")) cfg.num_utterances = synth_cfg.num_utterances;
        if (given("--dim")) cfg.dim = synth_cfg.dim;
        if (given("--frame-period-ms")) cfg.frame_period_ms = synth_cfg.frame_period_ms;
        if (given("--word-len-min")) cfg.word_len_frames.min = synth_cfg.word_len_frames.min;
        if (given("--word-len-max")) cfg.word_len_frames.max = synth_cfg.word_len_frames.max;
        if (given("--words-min")) cfg.words_per_utterance.min = synth_cfg.words_per_utterance.min;
        if (given("--words-max")) cfg.words_per_utterance.max = synth_cfg.words_per_utterance.max;
        if (given("--vocab-size")) cfg.vocab_size = synth_cfg.vocab_size;
        if (given("--centroid-scale")) cfg.centroid_scale = synth_cfg.centroid_scale;
        if (given("--boundary-strength")) cfg.boundary_strength = synth_cfg.boundary_strength;
        if (given("--consistency")) cfg.boundary_direction_consistency = synth_cfg.boundary_direction_consistency;
        if (given("--spike-rate")) cfg.within_word_spike_rate = synth_cfg.within_word_spike_rate;
        if (given("--spike-strength")) cfg.within_word_spike_strength = synth_cfg.within_word_spike_strength;
        if (given("--noise-sigma")) cfg.noise_sigma = synth_cfg.noise_sigma;
        if (given("--seed")) cfg.seed = synth_c.seed;
      } else {
        cfg.seed = synth_c.seed;
      }
      const auto corpus = generate(cfg, synth_c.jobs);
      write_corpus(corpus, synth_c.out);
      write_text_file(fs::path(synth_c.out) / "synth_config.json", synth_config_to_json(cfg));
      std::cerr << "wrote " << corpus.size() << " utterances to " << synth_c.out << "\n";
    } else if (*train) {
      apply_isa(train_c);
      const auto corpus = load(train_c.manifest, train_c.jobs);
      const auto outcome = train_model(corpus, train_options(train_c, train_t));
      write_model(outcome.model, train_c.out);
      const std::string report = training_report_to_json(outcome.report);
      write_text_file(train_report.empty() ? default_sibling(train_c.out, ".report.json") : train_report, report);
      std::cerr << "theta=" << (outcome.report.threshold ? outcome.report.threshold->theta : 0.0)
                << " positive_fraction=" << outcome.report.positive_fraction << "\n";
    } else if (*seg) {
      apply_isa(seg_c);
      const auto corpus = load(seg_c.manifest, seg_c.jobs);
      const auto model = read_model(seg_model);
      write_boundary_file(segment_with_model(corpus, model, segment_options(seg_c, seg_n)), seg_c.out);
    } else if (*ev) {
      apply_isa(eval_c);
      if (eval_ref.empty() == eval_c.manifest.empty())
        throw ArgumentError("eval needs exactly one of --ref or --manifest");
      const auto ref = eval_ref.empty() ? reference_boundaries(load(eval_c.manifest, eval_c.jobs))
                                        : read_boundary_file(eval_ref);
      const auto hyp = read_boundary_file(eval_hyp);
      const auto report = evaluate(ref, hyp, eval_tol);
      if (!eval_c.out.empty()) write_text_file(eval_c.out, report_to_json(report));
      std::cout << report_to_table(report);
    } else if (*base) {
      apply_isa(base_c);
      const auto corpus = load(base_c.manifest, base_c.jobs);
      write_boundary_file(segment_by_gradient(corpus, segment_options(base_c, base_n)), base_c.out);
    } else if (*sup) {
      apply_isa(sup_c);
      const auto corpus = load(sup_c.manifest, sup_c.jobs);
      const auto eval_corpus = sup_eval_manifest.empty() ? corpus : load(sup_eval_manifest, sup_c.jobs);
      TrainOptions opts = train_options(sup_c, sup_t);
      opts.label_source = LabelSource::ground_truth;
      const auto outcome = train_model(corpus, opts);
      const auto hyp = segment_with_model(eval_corpus, outcome.model, segment_options(sup_c, sup_n));
      const auto report = evaluate(reference_boundaries(eval_corpus), hyp, sup_tol);
      const fs::path dir = sup_c.out;
      ensure_dir(dir);
      write_model(outcome.model, dir / "model.json");
      write_text_file(dir / "train_report.json", training_report_to_json(outcome.report));
      write_boundary_file(hyp, dir / "boundaries.jsonl");
      write_text_file(dir / "eval_report.json", report_to_json(report));
      std::cout << report_to_table(report);
    } else if (*sw) {
      apply_isa(sw_c);
      const auto corpus = load(sw_c.manifest, sw_c.jobs);
      SweepOptions opts;
      opts.parameter = sw_param == "percentile" ? SweepParameter::percentile : SweepParameter::num_train;
      opts.values = sw_values;
      if (opts.values.empty()) {
        if (opts.parameter != SweepParameter::percentile) throw ArgumentError("--values is required for num-train");
        opts.values = {10, 20, 30, 40, 50, 60, 70, 80, 90};
      }
      opts.train = train_options(sw_c, sw_t);
      opts.segment = segment_options(sw_c, sw_n);
      opts.tolerance_ms = sw_tol;
      std::vector<SweepRow> rows;
      if (sw_eval_manifest.empty()) {
        rows = sweep(corpus, opts);
      } else {
        // Train on --manifest, score on the evaluation corpus.
        const auto eval_corpus = load(sw_eval_manifest, sw_c.jobs);
        const auto refs = reference_boundaries(eval_corpus);
        for (double v : opts.values) {
          TrainOptions t = opts.train;
          if (opts.parameter == SweepParameter::percentile)
            t.percentile = v;
          else
            t.num_train = static_cast<std::size_t>(v);
          const auto trained = train_model(corpus, t);
          SweepRow row;
          row.parameter = opts.parameter;
          row.value = v;
          if (trained.report.threshold) row.theta = trained.report.threshold->theta;
          row.positive_fraction = trained.report.positive_fraction;
          row.report = evaluate(refs, segment_with_model(eval_corpus, trained.model, opts.segment), sw_tol);
          rows.push_back(row);
        }
      }
      write_text_file(sw_c.out, sweep_to_json(rows));
      write_text_file(sw_data.empty() ? default_sibling(sw_c.out, ".tsv") : sw_data, sweep_to_tsv(rows));
      std::cout << sweep_to_tsv(rows);
    }
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const FormatError& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return kFormat;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kOk;
}
