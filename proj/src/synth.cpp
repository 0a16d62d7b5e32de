// src/synth.cpp

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

#include "wordseg/synth.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"
#include "wordseg/errors.hpp"
#include "wordseg/parallel.hpp"
#include "wordseg/random.hpp"

namespace wordseg {

using json = nlohmann::ordered_json;

namespace {

constexpr std::uint64_t kVocabStream = 0xc0ffee;

std::vector<double> unit_vector(Rng& rng, std::size_t d) {
  std::vector<double> v(d);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (auto& x : v) {
      x = rng.normal();
      norm += x * x;
    }
  } while (norm == 0.0);
  norm = std::sqrt(norm);
  for (auto& x : v) x /= norm;
  return v;
}

struct Vocabulary {
  std::vector<std::vector<double>> centroids;
  std::vector<double> boundary_direction;
};

Vocabulary make_vocabulary(const SynthConfig& cfg) {
  Rng rng(mix_seed(cfg.seed, kVocabStream));
  Vocabulary v;
  const double scale = cfg.centroid_scale / std::sqrt(static_cast<double>(cfg.dim));
  v.centroids.resize(cfg.vocab_size, std::vector<double>(cfg.dim));
  for (auto& c : v.centroids)
    for (auto& x : c) x = scale * rng.normal();
  v.boundary_direction = unit_vector(rng, cfg.dim);
  return v;
}

Utterance make_utterance(const SynthConfig& cfg, const Vocabulary& vocab, std::size_t index) {
  Rng rng(mix_seed(cfg.seed, index));
  const std::size_t d = cfg.dim;
  const auto num_words = rng.uniform_int(cfg.words_per_utterance.min, cfg.words_per_utterance.max);

  std::vector<double> frames;
  std::vector<double> boundaries_ms;
  std::size_t n = 0;
  for (std::uint64_t w = 0; w < num_words; ++w) {
    const auto len = static_cast<std::size_t>(rng.uniform_int(cfg.word_len_frames.min, cfg.word_len_frames.max));
    const auto& centroid = vocab.centroids[rng.uniform_int(0, cfg.vocab_size - 1)];
    const std::size_t start = n;
    frames.resize((n + len) * d);
    for (std::size_t t = start; t < start + len; ++t)
      for (std::size_t j = 0; j < d; ++j) frames[t * d + j] = centroid[j] + cfg.noise_sigma * rng.normal();

    if (w > 0) {
      const auto v = unit_vector(rng, d);
      const double c = cfg.boundary_direction_consistency;
      for (std::size_t j = 0; j < d; ++j)
        frames[start * d + j] += cfg.boundary_strength * (c * vocab.boundary_direction[j] + (1.0 - c) * v[j]);
      boundaries_ms.push_back(static_cast<double>(start) * cfg.frame_period_ms);
    }
    // Interior frames exclude the first and last frame of the word.
    for (std::size_t t = start + 1; t + 1 < start + len; ++t) {
      if (rng.uniform() >= cfg.within_word_spike_rate) continue;
      const auto s = unit_vector(rng, d);
      for (std::size_t j = 0; j < d; ++j) frames[t * d + j] += cfg.within_word_spike_strength * s[j];
    }
    n += len;
  }

  char id[32];
  std::snprintf(id, sizeof id, "utt%05zu", index);
  Utterance u;
  u.features.utterance_id = id;
  u.features.num_frames = n;
  u.features.dim = d;
  u.features.frame_period_ms = static_cast<float>(cfg.frame_period_ms);
  u.features.data.assign(frames.begin(), frames.end());
  u.ground_truth_ms = std::move(boundaries_ms);
  return u;
}

}  // namespace

void SynthConfig::validate() const {
  if (num_utterances == 0 || dim == 0 || vocab_size == 0)
    throw ArgumentError("synth: num_utterances, dim and vocab_size must be positive");
  if (!(frame_period_ms > 0.0)) throw ArgumentError("synth: frame period must be positive");
  if (word_len_frames.min < 1 || word_len_frames.min > word_len_frames.max)
    throw ArgumentError("synth: need 1 <= min word length <= max word length");
  if (words_per_utterance.min < 1 || words_per_utterance.min > words_per_utterance.max)
    throw ArgumentError("synth: need 1 <= min words <= max words");
  if (!(centroid_scale >= 0.0) || !(boundary_strength >= 0.0) || !(within_word_spike_strength >= 0.0) ||
      !(noise_sigma >= 0.0))
    throw ArgumentError("synth: scales and strengths must be non-negative");
  if (!(boundary_direction_consistency >= 0.0 && boundary_direction_consistency <= 1.0))
    throw ArgumentError("synth: boundary_direction_consistency must lie in [0, 1]");
  if (!(within_word_spike_rate >= 0.0 && within_word_spike_rate <= 1.0))
    throw ArgumentError("synth: within_word_spike_rate must lie in [0, 1]");
}

std::string synth_config_to_json(const SynthConfig& c) {
  json j;
  j["num_utterances"] = c.num_utterances;
  j["dim"] = c.dim;
  j["frame_period_ms"] = c.frame_period_ms;
  j["word_len_frames"] = {{"min", c.word_len_frames.min}, {"max", c.word_len_frames.max}};
  j["words_per_utterance"] = {{"min", c.words_per_utterance.min}, {"max", c.words_per_utterance.max}};
  j["vocab_size"] = c.vocab_size;
  j["centroid_scale"] = c.centroid_scale;
  j["boundary_strength"] = c.boundary_strength;
  j["boundary_direction_consistency"] = c.boundary_direction_consistency;
  j["within_word_spike_rate"] = c.within_word_spike_rate;
  j["within_word_spike_strength"] = c.within_word_spike_strength;
  j["noise_sigma"] = c.noise_sigma;
  j["seed"] = c.seed;
  return j.dump(2) + "\n";
}

SynthConfig synth_config_from_json(const std::string& text) {
  SynthConfig c;
  try {
    const json j = json::parse(text);
    auto get = [&](const char* key, auto& field) {
      if (auto it = j.find(key); it != j.end()) field = it->get<std::decay_t<decltype(field)>>();
    };
    auto range = [&](const char* key, CountRange& r) {
      if (auto it = j.find(key); it != j.end()) {
        r.min = it->at("min").get<std::size_t>();
        r.max = it->at("max").get<std::size_t>();
      }
    };
    for (auto it = j.begin(); it != j.end(); ++it) {
      static const char* known[] = {"num_utterances", "dim", "frame_period_ms", "word_len_frames",
                                    "words_per_utterance", "vocab_size", "centroid_scale", "boundary_strength",
                                    "boundary_direction_consistency", "within_word_spike_rate",
                                    "within_word_spike_strength", "noise_sigma", "seed"};
      bool ok = false;
      for (const char* k : known) ok = ok || it.key() == k;
      if (!ok) throw FormatError("unknown synth config field '" + it.key() + "'");
    }
    get("num_utterances", c.num_utterances);
    get("dim", c.dim);
    get("frame_period_ms", c.frame_period_ms);
    range("word_len_frames", c.word_len_frames);
    range("words_per_utterance", c.words_per_utterance);
    get("vocab_size", c.vocab_size);
    get("centroid_scale", c.centroid_scale);
    get("boundary_strength", c.boundary_strength);
    get("boundary_direction_consistency", c.boundary_direction_consistency);
    get("within_word_spike_rate", c.within_word_spike_rate);
    get("within_word_spike_strength", c.within_word_spike_strength);
    get("noise_sigma", c.noise_sigma);
    get("seed", c.seed);
  } catch (const json::exception& e) {
    throw FormatError(std::string("synth config: ") + e.what());
  }
  return c;
}

std::vector<Utterance> generate(const SynthConfig& cfg, int jobs) {
  cfg.validate();
  const Vocabulary vocab = make_vocabulary(cfg);
  std::vector<Utterance> out(cfg.num_utterances);
  parallel_for(out.size(), jobs, [&](std::size_t i) { out[i] = make_utterance(cfg, vocab, i); });
  return out;
}

}  // namespace wordseg
