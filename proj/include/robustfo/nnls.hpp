// Copyright 2026 The robustfo Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "robustfo/common.hpp"

#include <vector>

namespace robustfo {

struct NnlsResult {
  Vector x;
  double residual = 0.0;  // ||A x - b||_2
  int iterations = 0;
};

/// Lawson-Hanson active-set method for min ||A x - b||_2 s.t. x >= 0.
inline NnlsResult nnls(const Matrix& A, const Vector& b, double tol = 1e-12) {
  require_dim(b.size(), A.rows(), "nnls rhs");
  const Index p = A.cols();
  NnlsResult out;
  out.x = Vector::Zero(p);
  if (p == 0) {
    out.residual = b.norm();
    return out;
  }
  std::vector<char> passive(static_cast<std::size_t>(p), 0);
  const double scale = tol * (1.0 + A.cwiseAbs().maxCoeff() * (1.0 + b.cwiseAbs().maxCoeff()));
  const int cap = 3 * static_cast<int>(p) + 10;

  auto solve_passive = [&](Vector& z) {
    std::vector<Index> idx;
    for (Index j = 0; j < p; ++j) {
      if (passive[static_cast<std::size_t>(j)]) idx.push_back(j);
    }
    Matrix Ap(A.rows(), static_cast<Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) Ap.col(static_cast<Index>(k)) = A.col(idx[k]);
    const Vector zp = Ap.colPivHouseholderQr().solve(b);
    z = Vector::Zero(p);
    for (std::size_t k = 0; k < idx.size(); ++k) z(idx[k]) = zp(static_cast<Index>(k));
  };

  Vector w = A.transpose() * (b - A * out.x);
  while (out.iterations < cap) {
    Index best = -1;
    double wmax = scale;
    for (Index j = 0; j < p; ++j) {
      if (!passive[static_cast<std::size_t>(j)] && w(j) > wmax) {
        wmax = w(j);
        best = j;
      }
    }
    if (best < 0) break;
    passive[static_cast<std::size_t>(best)] = 1;
    ++out.iterations;

    Vector z;
    for (int inner = 0; inner < cap; ++inner) {
      solve_passive(z);
      bool all_pos = true;
      for (Index j = 0; j < p; ++j) {
        if (passive[static_cast<std::size_t>(j)] && z(j) <= 0.0) all_pos = false;
      }
      if (all_pos) break;
      double alpha = 1.0;
      for (Index j = 0; j < p; ++j) {
        if (passive[static_cast<std::size_t>(j)] && z(j) <= 0.0) {
          alpha = std::min(alpha, out.x(j) / (out.x(j) - z(j)));
        }
      }
      out.x += alpha * (z - out.x);
      for (Index j = 0; j < p; ++j) {
        if (passive[static_cast<std::size_t>(j)] && out.x(j) <= tol) {
          passive[static_cast<std::size_t>(j)] = 0;
          out.x(j) = 0.0;
        }
      }
    }
    out.x = z.cwiseMax(0.0);
    w = A.transpose() * (b - A * out.x);
  }
  out.residual = (A * out.x - b).norm();
  return out;
}

}  // namespace robustfo
