// src/linalg.cpp

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

#include "wordseg/linalg.hpp"

#include <cmath>
#include <string>

#include "wordseg/errors.hpp"

namespace wordseg {

Cholesky::Cholesky(const SquareMatrix& a) : l_(a.n) {
  const std::size_t n = a.n;
  for (std::size_t j = 0; j < n; ++j) {
    double diag = a(j, j);
    for (std::size_t k = 0; k < j; ++k) diag -= l_(j, k) * l_(j, k);
    if (!(diag > 0.0) || !std::isfinite(diag))
      throw DataError("matrix is not positive definite (pivot " + std::to_string(j) + ")");
    const double ljj = std::sqrt(diag);
    l_(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      const double* li = &l_.a[i * n];
      const double* lj = &l_.a[j * n];
      for (std::size_t k = 0; k < j; ++k) s -= li[k] * lj[k];
      l_(i, j) = s / ljj;
    }
  }
}

std::vector<double> Cholesky::solve(std::span<const double> b) const {
  const std::size_t n = l_.n;
  if (b.size() != n) throw ArgumentError("Cholesky::solve: right-hand side has wrong length");
  std::vector<double> x(b.begin(), b.end());
  for (std::size_t i = 0; i < n; ++i) {
    double s = x[i];
    for (std::size_t k = 0; k < i; ++k) s -= l_(i, k) * x[k];
    x[i] = s / l_(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = x[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= l_(k, i) * x[k];
    x[i] = s / l_(i, i);
  }
  return x;
}

std::vector<double> multiply(const SquareMatrix& a, std::span<const double> x) {
  std::vector<double> y(a.n, 0.0);
  for (std::size_t i = 0; i < a.n; ++i)
    for (std::size_t j = 0; j < a.n; ++j) y[i] += a(i, j) * x[j];
  return y;
}

}  // namespace wordseg
