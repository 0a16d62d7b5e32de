// include/wordseg/linalg.hpp

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
#include <span>
#include <vector>

namespace wordseg {

/// Dense row-major square matrix of doubles.
struct SquareMatrix {
  std::size_t n = 0;
  std::vector<double> a;

  explicit SquareMatrix(std::size_t size = 0) : n(size), a(size * size, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

/// Lower-triangular Cholesky factor L with A = L L^T.
class Cholesky {
 public:
  /// Reads the lower triangle of `a`. Throws DataError if `a` is not positive definite.
  explicit Cholesky(const SquareMatrix& a);

  std::vector<double> solve(std::span<const double> b) const;

 private:
  SquareMatrix l_;
};

/// y = A x
std::vector<double> multiply(const SquareMatrix& a, std::span<const double> x);

}  // namespace wordseg
