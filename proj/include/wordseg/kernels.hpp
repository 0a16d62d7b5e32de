// include/wordseg/kernels.hpp

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
#include <string_view>
#include <vector>

// Inner loops shared by the gradient, scoring and normal-equation code.
// Every kernel has a scalar reference; vector variants must agree with it up
// to summation-order rounding and are selected once per process.
namespace wordseg::kernels {

enum class Isa { scalar, avx2, neon };

struct KernelTable {
  Isa isa;
  /// sum_i (a_i - b_i)^2, accumulated in double.
  double (*squared_distance)(const float* a, const float* b, std::size_t n);
  /// sum_i x_i * w_i, accumulated in double.
  double (*dot)(const float* x, const double* w, std::size_t n);
  /// y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
};

const KernelTable& scalar_table();
/// nullptr when not compiled in or not supported by this CPU.
const KernelTable* avx2_table();
const KernelTable* neon_table();

/// Table in use. Defaults to the widest supported ISA.
const KernelTable& active();

/// Switches the active table; throws ArgumentError if the ISA is unavailable.
void select(Isa isa);

std::vector<Isa> available();
std::string_view name(Isa isa);
Isa parse_isa(std::string_view text);

}  // namespace wordseg::kernels
