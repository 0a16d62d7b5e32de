// include/wordseg/random.hpp

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
#include <random>
#include <vector>

namespace wordseg {

/// SplitMix64 finalizer; used to derive independent per-item seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Seeded generator whose draws are identical on every platform. The standard
/// distributions are implementation-defined, so the mappings from raw 64-bit
/// words to uniforms and normals live here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer in [lo, hi], unbiased.
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi);
  /// Standard normal (Box-Muller).
  double normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// k distinct indices from [0, n), uniformly, returned in ascending order.
std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k, std::uint64_t seed);

}  // namespace wordseg
