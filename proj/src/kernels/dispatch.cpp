// src/kernels/dispatch.cpp

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

#include <atomic>
#include <string>

#include "wordseg/errors.hpp"
#include "wordseg/kernels.hpp"

namespace wordseg::kernels {

namespace detail {
#if defined(WORDSEG_HAVE_AVX2)
const KernelTable& avx2_kernels();
#endif
#if defined(WORDSEG_HAVE_NEON)
const KernelTable& neon_kernels();
#endif
}  // namespace detail

const KernelTable* avx2_table() {
#if defined(WORDSEG_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &detail::avx2_kernels() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable* neon_table() {
#if defined(WORDSEG_HAVE_NEON)
  // Advanced SIMD is mandatory on AArch64.
  return &detail::neon_kernels();
#else
  return nullptr;
#endif
}

namespace {

const KernelTable* best() {
  if (auto* t = avx2_table()) return t;
  if (auto* t = neon_table()) return t;
  return &scalar_table();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{best()};
  return table;
}

}  // namespace

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

void select(Isa isa) {
  const KernelTable* t = nullptr;
  switch (isa) {
    case Isa::scalar: t = &scalar_table(); break;
    case Isa::avx2: t = avx2_table(); break;
    case Isa::neon: t = neon_table(); break;
  }
  if (!t) throw ArgumentError("kernel ISA '" + std::string(name(isa)) + "' is not available on this machine");
  current().store(t, std::memory_order_release);
}

std::vector<Isa> available() {
  std::vector<Isa> out{Isa::scalar};
  if (avx2_table()) out.push_back(Isa::avx2);
  if (neon_table()) out.push_back(Isa::neon);
  return out;
}

std::string_view name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

Isa parse_isa(std::string_view text) {
  if (text == "scalar") return Isa::scalar;
  if (text == "avx2") return Isa::avx2;
  if (text == "neon") return Isa::neon;
  throw ArgumentError("unknown kernel ISA '" + std::string(text) + "'");
}

}  // namespace wordseg::kernels
