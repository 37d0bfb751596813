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

// Small worked instances with known answers, shared by the CLI `examples`
// command and the test suites.

#pragma once

#include "robustfo/calculus.hpp"
#include "robustfo/program.hpp"

#include <vector>

namespace robustfo::golden {

// --- degenerate LP: min x2 s.t. A x <= 0, three rows active at x = 0 ---

inline ConicProgram degen_program() {
  ConicProgram p;
  p.c = Vector(2);
  p.c << 0.0, 1.0;
  Matrix A(3, 2);
  A << -1.0, -1.0,
        1.0, -1.0,
        0.5, -1.0;
  p.blocks.push_back({A, Vector::Zero(3), Cone::orthant(3)});
  p.uncertainty.push_back(UncertaintySet::zero(3, 2));
  return p;
}

/// |db_2| <= 4 eps, other entries zero.
inline BlockSets degen_s1(double eps = 1.0) {
  Vector up(3), down(3);
  up << 0.0, 4.0 * eps, 0.0;
  down << 0.0, -4.0 * eps, 0.0;
  return {UncertaintySet::b_vertices({up, down}, 2)};
}

/// |db_3| <= 3 eps, other entries zero.
inline BlockSets degen_s2(double eps = 1.0) {
  Vector up(3), down(3);
  up << 0.0, 0.0, 3.0 * eps;
  down << 0.0, 0.0, -3.0 * eps;
  return {UncertaintySet::b_vertices({up, down}, 2)};
}

// --- square cone: Q = {x : x3 >= max(|x1|, |x2|)}, A = I, b = 0, min x3 ---

inline Matrix square_cone_rows() {
  Matrix V(4, 3);
  V << 1.0, 0.0, -1.0,
      -1.0, 0.0, -1.0,
       0.0, 1.0, -1.0,
       0.0, -1.0, -1.0;
  return V;
}

inline ConicProgram square_eg_program() {
  ConicProgram p;
  p.c = Vector::Unit(3, 2);
  p.blocks.push_back({Matrix::Identity(3, 3), Vector::Zero(3), Cone::polyhedral(square_cone_rows())});
  p.uncertainty.push_back(UncertaintySet::zero(3, 3));
  return p;
}

/// |db_1| <= r1, |db_2| <= r2, |db_3| <= r3 as a box.
inline UncertaintySet db_box(double r1, double r2, double r3) {
  Vector rb(3);
  rb << r1, r2, r3;
  return UncertaintySet::rectangular(Matrix::Zero(3, 3), rb);
}

inline BlockSets square_eg_s1(double a, double b, double delta) {
  return {db_box(a / 2, b / 2, delta / 2)};
}
inline BlockSets square_eg_s2(double a, double b, double delta) {
  return {db_box(b / 2, a / 2, delta / 2)};
}

// --- the same data against the second-order cone x3 >= ||(x1, x2)|| ---

/// Residual coordinates reordered so the radius x3 comes first.
inline Matrix soc_permutation() {
  Matrix P(3, 3);
  P << 0.0, 0.0, 1.0,
       1.0, 0.0, 0.0,
       0.0, 1.0, 0.0;
  return P;
}

inline ConicProgram square_eg_soc_program() {
  ConicProgram p;
  p.c = Vector::Unit(3, 2);
  p.blocks.push_back({soc_permutation(), Vector::Zero(3), Cone::second_order(3)});
  p.uncertainty.push_back(UncertaintySet::zero(3, 3));
  return p;
}

/// Corners of the box |db_j| <= r_j, expressed in the cone's coordinates.
inline UncertaintySet permuted_box_corners(double r1, double r2, double r3) {
  const Matrix P = soc_permutation();
  std::vector<Vector> pts;
  for (int mask = 0; mask < 8; ++mask) {
    Vector d(3);
    d << (mask & 1 ? r1 : -r1), (mask & 2 ? r2 : -r2), (mask & 4 ? r3 : -r3);
    pts.push_back(P * d);
  }
  return UncertaintySet::b_vertices(std::move(pts), 3);
}

inline BlockSets square_eg_soc_s1(double a, double b, double delta) {
  return {permuted_box_corners(a / 2, b / 2, delta / 2)};
}
inline BlockSets square_eg_soc_s2(double a, double b, double delta) {
  return {permuted_box_corners(b / 2, a / 2, delta / 2)};
}

/// Addition report for the square example on the second-order cone.
inline AdditionReport square_eg_soc_variant(double a, double b, double delta,
                                            const TangentialOptions& opt = {}) {
  if (!(a >= 0.0) || !(b >= 0.0) || !(delta >= 0.0)) {
    throw std::invalid_argument("square_eg_soc_variant: a, b, delta must be >= 0");
  }
  return addition_report(square_eg_soc_program(), Vector::Zero(3), square_eg_soc_s1(a, b, delta),
                         square_eg_soc_s2(a, b, delta), 1.0, 1.0, opt);
}

// --- SOCP walkthrough: min -0.6 x1 - 1.8 x2 s.t. ||x|| <= 1, x2 <= 0.8 ---
// Nominal optimum (0.6, 0.8) sits on the cone boundary at z = (1, 0.6, 0.8).

inline ConicProgram socp_walkthrough_program() {
  ConicProgram p;
  p.c = Vector(2);
  p.c << -0.6, -1.8;
  Matrix A(3, 2);
  A << 0.0, 0.0,
       1.0, 0.0,
       0.0, 1.0;
  Vector b(3);
  b << -1.0, 0.0, 0.0;
  p.blocks.push_back({A, b, Cone::second_order(3)});
  Matrix A2(1, 2);
  A2 << 0.0, 1.0;
  Vector b2(1);
  b2 << 0.8;
  p.blocks.push_back({A2, b2, Cone::orthant(1)});

  std::vector<Vector> pts(3, Vector::Zero(3));
  pts[0] << 0.2, 0.0, 0.0;
  pts[1] << 0.0, 0.1, 0.0;
  pts[2] << 0.0, 0.0, -0.1;
  p.uncertainty.push_back(UncertaintySet::b_vertices(pts, 2));
  Vector eb(1);
  eb << 0.1;
  p.uncertainty.push_back(UncertaintySet::rectangular(Matrix::Zero(1, 2), eb));
  return p;
}

}  // namespace robustfo::golden
