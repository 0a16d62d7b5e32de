// include/wordseg/synth.hpp

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
#include <cstdint>
#include <string>
#include <vector>

#include "wordseg/tensor_io.hpp"

namespace wordseg {

struct CountRange {
  std::size_t min = 0;
  std::size_t max = 0;
};

/// Synthetic corpus of word sequences. Each word is a vocabulary centroid plus
/// white noise; the first frame of every word after the first carries a
/// boundary cue mostly along one fixed global direction; interior frames may
/// carry random spikes that raise the gradient magnitude without being boundaries.
struct SynthConfig {
  std::size_t num_utterances = 200;
  std::size_t dim = 64;
  double frame_period_ms = 20.0;
  CountRange word_len_frames{5, 25};
  CountRange words_per_utterance{6, 12};
  std::size_t vocab_size = 50;
  double centroid_scale = 0.3;  // expected norm of a vocabulary centroid
  double boundary_strength = 1.0;
  double boundary_direction_consistency = 0.9;
  double within_word_spike_rate = 0.3;  // per interior frame
  double within_word_spike_strength = 1.0;
  double noise_sigma = 0.05;  // per component
  std::uint64_t seed = 0;

  void validate() const;
};

std::string synth_config_to_json(const SynthConfig& cfg);
SynthConfig synth_config_from_json(const std::string& text);

/// Utterances are named utt00000, utt00001, ... and carry their interior
/// boundaries (ms) as ground truth. Output is independent of `jobs`.
std::vector<Utterance> generate(const SynthConfig& cfg, int jobs = 1);

}  // namespace wordseg
