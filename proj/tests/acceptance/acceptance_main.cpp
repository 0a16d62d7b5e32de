// tests/acceptance/acceptance_main.cpp

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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any selected criterion fails.
//
//   wordseg_acceptance [--only <criterion>] [--list]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli_runner.hpp"
#include "json.hpp"
#include "oracles.hpp"
#include "reference_rows.hpp"
#include "scratch.hpp"
#include "wordseg/classifier.hpp"
#include "wordseg/gradcore.hpp"
#include "wordseg/metrics.hpp"
#include "wordseg/nms.hpp"
#include "wordseg/pipeline.hpp"
#include "wordseg/synth.hpp"

namespace fs = std::filesystem;
using namespace wordseg;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

const fs::path kConfigDir = WORDSEG_ACCEPTANCE_DIR;

// Shared scratch area and a CLI wrapper that fails loudly.
struct Workspace {
  ScratchDir dir{"acceptance"};
  std::string path(const std::string& name) const { return (dir.path() / name).string(); }
  void cli(const std::string& args) const {
    const int rc = run_cli(args, dir.path() / "cli.log");
    if (rc != 0) throw std::runtime_error("`wordseg " + args + "` exited " + std::to_string(rc) + ": " +
                                          slurp(dir.path() / "cli.log"));
  }
  double f1(const std::string& eval_json) const {
    return nlohmann::json::parse(slurp(eval_json)).at("f1").get<double>();
  }
};

Outcome table_consistency() {
  const auto& rows = kReferenceRows;
  Outcome o{true, ""};
  int bad = 0;
  std::ostringstream fails;
  for (const auto& row : rows) {
    const auto v = os_and_r_value(row.precision / 100.0, row.recall / 100.0);
    const double os = 100 * v.os, rv = 100 * v.r_value;
    if (std::abs(os - row.os) > 0.2 || std::abs(rv - row.r_value) > 0.2) {
      ++bad;
      char buf[160];
      std::snprintf(buf, sizeof buf, " [%s: os %.2f vs %.2f, r %.2f vs %.2f]", row.name, os, row.os, rv, row.r_value);
      fails << buf;
    }
  }
  o.pass = bad == 0;
  o.detail = std::to_string(std::size(rows) - static_cast<std::size_t>(bad)) + "/" + std::to_string(std::size(rows)) +
             " rows within 0.2" + fails.str();
  return o;
}

Outcome ridge_oracle() {
  std::mt19937_64 gen(20240611);
  std::uniform_int_distribution<std::size_t> dd(1, 8), mm(2, 50);
  std::normal_distribution<float> nf(0.0f, 1.0f);
  std::bernoulli_distribution coin(0.3);
  const double lambdas[] = {0.1, 1.0, 10.0};
  double worst = -INFINITY;
  const int instances = 150;
  constexpr std::size_t kMaxIters = 2000000;
  std::size_t unconverged = 0, max_iters = 0;
  for (int i = 0; i < instances; ++i) {
    const std::size_t d = dd(gen), m = mm(gen);
    oracle::Problem p;
    p.m = m;
    p.d = d;
    p.lambda = lambdas[i % 3];
    TrainingSet ts;
    ts.dim = d;
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t k = 0; k < d; ++k) {
        const float v = nf(gen) * (1.0f + static_cast<float>(k)) + 0.5f;
        ts.features.push_back(v);
        p.x.push_back(v);
      }
      const std::uint8_t y = coin(gen) ? 1 : 0;
      ts.labels.push_back(y);
      p.y.push_back(y);
    }
    const auto model = train_ridge(ts, p.lambda);
    const double closed = oracle::ridge_objective(p, model.weights, model.bias);
    const auto gd = oracle::ridge_gradient_descent(p, kMaxIters);
    if (gd.iterations >= kMaxIters) ++unconverged;
    max_iters = std::max(max_iters, gd.iterations);
    worst = std::max(worst, (closed - gd.objective) / std::max(1e-300, std::abs(gd.objective)));
  }
  return {worst <= 1e-6 && unconverged == 0,
          std::to_string(instances) + " instances, worst (closed - descent) / descent = " + fmt("%.3g", worst) +
              ", descent converged in <= " + std::to_string(max_iters) + " steps, " + std::to_string(unconverged) +
              " unconverged"};
}

Outcome gradient_oracle() {
  std::mt19937_64 gen(99);
  std::uniform_int_distribution<std::size_t> nn(1, 60), dd(1, 96);
  std::uniform_int_distribution<int> grid(-2048, 2048);
  std::uniform_real_distribution<float> alpha_d(0.1f, 4.0f);
  double oracle_err = 0, shift_err = 0, scale_err = 0;
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t n = nn(gen), d = dd(gen);
    // Gaussian data against the elementwise oracle.
    const auto s = oracle::random_sequence(gen, n, d);
    const auto got = gradient_magnitude(s).values;
    const auto want = oracle::gradient_magnitude(s);
    for (std::size_t t = 0; t < n; ++t)
      oracle_err = std::max(oracle_err, std::abs(got[t] - want[t]) / std::max(1.0, std::abs(want[t])));

    // Dyadic data, so that the shifted copy is exact in single precision.
    FrameSequence g = s;
    for (auto& v : g.data) v = static_cast<float>(grid(gen)) / 256.0f;
    std::vector<float> shift(d);
    for (auto& v : shift) v = static_cast<float>(grid(gen)) / 256.0f;
    FrameSequence shifted = g, scaled = g;
    const float alpha = alpha_d(gen);
    for (std::size_t t = 0; t < n; ++t)
      for (std::size_t k = 0; k < d; ++k) {
        shifted.data[t * d + k] += shift[k];
        scaled.data[t * d + k] = static_cast<float>(alpha * static_cast<double>(g.data[t * d + k]));
      }
    const auto base = gradient_magnitude(g).values;
    const auto sh = gradient_magnitude(shifted).values;
    const auto sc = gradient_magnitude(scaled).values;
    const double a2 = static_cast<double>(alpha) * alpha;
    for (std::size_t t = 0; t < n; ++t) {
      shift_err = std::max(shift_err, std::abs(sh[t] - base[t]) / std::max(1.0, base[t]));
      scale_err = std::max(scale_err, std::abs(sc[t] - a2 * base[t]) / std::max(1.0, a2 * base[t]));
    }
  }
  const bool pass = oracle_err <= 1e-6 && shift_err <= 1e-6 && scale_err <= 1e-6;
  return {pass, "max rel err: oracle " + fmt("%.2g", oracle_err) + ", shift " + fmt("%.2g", shift_err) +
                    ", scale " + fmt("%.2g", scale_err)};
}

Outcome nms_contract() {
  std::mt19937_64 gen(4242);
  std::uniform_int_distribution<std::size_t> nn(1, 400), kk(1, 30);
  std::uniform_int_distribution<int> coarse(0, 7), mode_d(0, 3);
  std::uniform_real_distribution<double> tau_min_d(5.0, 150.0), tau_avg_d(150.0, 600.0);
  std::normal_distribution<double> nd;
  const int vectors = 2000;
  int violations = 0;
  std::string first;
  auto fail = [&](const std::string& why) {
    if (violations++ == 0) first = why;
  };
  for (int rep = 0; rep < vectors; ++rep) {
    const std::size_t n = nn(gen);
    const int mode = mode_d(gen);
    std::vector<double> s(n);
    for (auto& v : s) v = mode == 0 ? coarse(gen) : nd(gen) * 3.0;  // mode 0 is tie-heavy
    NmsConfig cfg;
    cfg.tau_min_ms = tau_min_d(gen);
    cfg.tau_avg_ms = std::max(cfg.tau_min_ms, tau_avg_d(gen));
    if (mode == 1) cfg.fixed_word_count = kk(gen);
    const double period = 20.0;
    const auto out = detect_peaks(s, period, cfg);
    const std::size_t k = boundary_budget(n, period, cfg);
    const std::size_t r = suppression_radius(period, cfg);
    if (out.frames.size() > k) fail("size > K");
    for (std::size_t i = 1; i < out.frames.size(); ++i)
      if (out.frames[i] - out.frames[i - 1] <= r) fail("gap <= r");
    const auto argmax = static_cast<std::size_t>(std::max_element(s.begin(), s.end()) - s.begin());
    if (!std::binary_search(out.frames.begin(), out.frames.end(), argmax)) fail("argmax not selected");
    const std::vector<std::function<double(double)>> transforms = {
        [](double x) { return 2.0 * x + 3.0; },
        [](double x) { return std::exp(x / 4.0); },
        [](double x) { return x * x * x; },
        [](double x) { return std::atan(x / 8.0); },
    };
    for (const auto& f : transforms) {
      std::vector<double> t(n);
      for (std::size_t i = 0; i < n; ++i) t[i] = f(s[i]);
      if (!(detect_peaks(t, period, cfg) == out)) fail("monotone transform changed the selection");
    }
  }
  return {violations == 0, std::to_string(vectors) + " score vectors, " + std::to_string(violations) +
                               " violations" + (first.empty() ? "" : " (first: " + first + ")")};
}

Outcome clean_synthetic_end_to_end(Workspace& ws) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string m = ws.path("clean/manifest.jsonl");
  ws.cli("synth --config " + (kConfigDir / "clean_synth.json").string() + " --out " + ws.path("clean"));
  ws.cli("train --manifest " + m + " --out " + ws.path("clean_model.json") + " --theta-percentile 20");
  ws.cli("segment --manifest " + m + " --model " + ws.path("clean_model.json") + " --num-words-from-reference --out " +
         ws.path("clean_hyp.jsonl"));
  ws.cli("eval --manifest " + m + " --hyp " + ws.path("clean_hyp.jsonl") + " --frame-tolerance-ms 20 --out " +
         ws.path("clean_eval.json"));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double f1 = ws.f1(ws.path("clean_eval.json"));
  return {f1 == 100.0 && secs < 30.0, "500 utterances, F1 = " + fmt("%.2f", f1) + " in " + fmt("%.1f", secs) + " s"};
}

// Noisy corpus shared by the gap and ablation criteria.
std::string noisy_manifest(Workspace& ws) {
  const std::string m = ws.path("noisy/manifest.jsonl");
  if (!fs::exists(m))
    ws.cli("synth --config " + (kConfigDir / "noisy_synth.json").string() + " --out " + ws.path("noisy"));
  return m;
}

Outcome gradient_baseline_gap(Workspace& ws) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string m = noisy_manifest(ws);
  ws.cli("train --manifest " + m + " --out " + ws.path("noisy_model.json"));
  ws.cli("segment --manifest " + m + " --model " + ws.path("noisy_model.json") + " --out " + ws.path("noisy_hyp.jsonl"));
  ws.cli("baseline-grad --manifest " + m + " --out " + ws.path("noisy_base.jsonl"));
  ws.cli("eval --manifest " + m + " --hyp " + ws.path("noisy_hyp.jsonl") + " --out " + ws.path("noisy_eval.json"));
  ws.cli("eval --manifest " + m + " --hyp " + ws.path("noisy_base.jsonl") + " --out " + ws.path("noisy_base_eval.json"));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double ours = ws.f1(ws.path("noisy_eval.json")), base = ws.f1(ws.path("noisy_base_eval.json"));
  return {ours - base >= 10.0 && secs < 60.0, "classifier F1 " + fmt("%.2f", ours) + " vs gradient-only F1 " +
                                                   fmt("%.2f", base) + " (" + fmt("%.1f", secs) + " s)"};
}

Outcome threshold_ablation_shape(Workspace& ws) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string m = noisy_manifest(ws);
  ws.cli("sweep --manifest " + m + " --parameter percentile --values 20,30,70 --out " + ws.path("ablation.json"));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const auto rows = nlohmann::json::parse(slurp(ws.path("ablation.json")));
  double f[3];
  for (int i = 0; i < 3; ++i) f[i] = rows.at(i).at("report").at("f1").get<double>();
  return {f[0] >= f[2] && f[1] >= f[2] && secs < 180.0, "F1 at 20/30/70 = " + fmt("%.2f", f[0]) + " / " +
                                                             fmt("%.2f", f[1]) + " / " + fmt("%.2f", f[2])};
}

Outcome label_flip_invariance() {
  auto cfg = synth_config_from_json(slurp(kConfigDir / "noisy_synth.json"));
  const auto corpus = generate(cfg);
  TrainingSetOptions opts;
  opts.num_utterances = 100;
  const auto ts = assemble_training_set(corpus, opts);
  auto flipped = ts;
  for (auto& y : flipped.labels) y = static_cast<std::uint8_t>(1 - y);
  const double lambda = 1e7;
  const auto model = train_ridge(ts, lambda);
  const auto flip_model = train_ridge(flipped, lambda);
  const std::set<std::string> train_ids(ts.utterance_ids.begin(), ts.utterance_ids.end());
  NmsConfig nms;
  std::size_t tested = 0, differing = 0;
  for (const auto& u : corpus) {
    if (train_ids.count(u.features.utterance_id)) continue;
    ++tested;
    const auto a = detect_peaks(score(model, u.features), u.features.frame_period_ms, nms);
    auto neg = score(flip_model, u.features);
    for (auto& v : neg) v = -v;
    const auto b = detect_peaks(neg, u.features.frame_period_ms, nms);
    if (!(a == b)) ++differing;
  }
  return {differing == 0 && tested > 0,
          std::to_string(tested) + " held-out utterances, " + std::to_string(differing) + " differ"};
}

Outcome cli_determinism(Workspace& ws) {
  // Every subcommand, run twice with --jobs 1 and once with --jobs 4.
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"synth", "synth --seed 5 --num-utterances 60 --dim 24 --out {o}/corpus"},
      {"train", "train --manifest {c} --num-train 30 --seed 2 --out {o}/model.json"},
      {"train-logistic", "train --manifest {c} --num-train 30 --objective logistic --ridge-lambda 1 --out {o}/lmodel.json"},
      {"segment", "segment --manifest {c} --model {r}/model.json --out {o}/hyp.jsonl"},
      {"baseline-grad", "baseline-grad --manifest {c} --out {o}/base.jsonl"},
      {"eval", "eval --manifest {c} --hyp {r}/hyp.jsonl --out {o}/eval.json"},
      {"supervised", "supervised --manifest {c} --num-train 30 --out {o}/sup"},
      {"sweep", "sweep --manifest {c} --values 20,50 --num-train 30 --out {o}/sweep.json"},
  };
  auto expand = [](std::string s, const std::string& out, const std::string& corpus, const std::string& ref) {
    auto sub = [&](const std::string& key, const std::string& val) {
      for (std::size_t p; (p = s.find(key)) != std::string::npos;) s.replace(p, key.size(), val);
    };
    sub("{o}", out);
    sub("{c}", corpus);
    sub("{r}", ref);
    return s;
  };
  const std::vector<std::pair<std::string, int>> runs = {{"run_a", 1}, {"run_b", 1}, {"run_j4", 4}};
  for (const auto& [name, jobs] : runs) {
    const std::string out = ws.path(name);
    fs::create_directories(out);
    // Downstream commands read the first run's artifacts so that inputs are identical.
    const std::string corpus = ws.path("run_a") + "/corpus/manifest.jsonl";
    for (const auto& [label, tmpl] : commands) {
      ws.cli(expand(tmpl, out, corpus, ws.path("run_a")) + " --jobs " + std::to_string(jobs));
    }
  }
  std::size_t files = 0;
  std::vector<std::string> mismatches;
  for (const auto& entry : fs::recursive_directory_iterator(ws.path("run_a"))) {
    if (!entry.is_regular_file()) continue;
    const auto rel = fs::relative(entry.path(), ws.path("run_a"));
    const std::string a = slurp(entry.path());
    ++files;
    for (const char* other : {"run_b", "run_j4"}) {
      const fs::path p = fs::path(ws.path(other)) / rel;
      if (!fs::exists(p) || slurp(p) != a) mismatches.push_back(std::string(other) + "/" + rel.string());
    }
  }
  std::string detail = std::to_string(commands.size()) + " commands, " + std::to_string(files) +
                       " artifacts compared across repeat and --jobs 4, " + std::to_string(mismatches.size()) +
                       " differ";
  if (!mismatches.empty()) detail += " (first: " + mismatches.front() + ")";
  return {mismatches.empty() && files > 0, detail};
}

}  // namespace

int main(int argc, char** argv) {
  std::string only;
  bool list = false;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--only" && i + 1 < argc)
      only = argv[++i];
    else if (a == "--list")
      list = true;
    else {
      std::cerr << "usage: wordseg_acceptance [--only <criterion>] [--list]\n";
      return 2;
    }
  }

  Workspace ws;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"table_consistency", table_consistency},
      {"ridge_oracle", ridge_oracle},
      {"gradient_oracle", gradient_oracle},
      {"nms_contract", nms_contract},
      {"clean_synthetic_end_to_end", [&] { return clean_synthetic_end_to_end(ws); }},
      {"gradient_baseline_gap", [&] { return gradient_baseline_gap(ws); }},
      {"threshold_ablation_shape", [&] { return threshold_ablation_shape(ws); }},
      {"label_flip_invariance", label_flip_invariance},
      {"cli_determinism", [&] { return cli_determinism(ws); }},
  };

  if (list) {
    for (const auto& c : criteria) std::cout << c.first << "\n";
    return 0;
  }
  bool matched = false, all_pass = true;
  for (const auto& [name, fn] : criteria) {
    if (!only.empty() && name != only) continue;
    matched = true;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    all_pass = all_pass && o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
  }
  if (!matched) {
    std::cerr << "unknown criterion '" << only << "'\n";
    return 2;
  }
  return all_pass ? 0 : 1;
}
