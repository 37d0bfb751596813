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

// Kelley-style outer approximation of second-order cone constraints
// M x + m in SOC, solved as a growing sequence of LPs.

#pragma once

#include "robustfo/cones.hpp"
#include "robustfo/lp.hpp"

#include <cmath>
#include <span>
#include <vector>

namespace robustfo {

/// M x + m must lie in the second-order cone of dimension M.rows().
struct SocConstraint {
  Matrix M;
  Vector m;
};

struct CutOptions {
  double tol = 1e-8;    // max SOC violation accepted at termination
  int max_rounds = 200;
  double box = 1e6;     // |x_k| <= box keeps every relaxation bounded
  LpOptions lp;
};

struct CutResult {
  LpSolution lp;
  LpProblem final_problem;  // base rows + cuts + box rows
  Index box_rows_begin = 0;  // rows at and after this index are the box
  int rounds = 0;
  int cuts = 0;
  double max_violation = 0.0;
  bool converged = false;
  bool box_active = false;
};

namespace detail {

inline void append_row(LpProblem& p, const Vector& g, double rhs) {
  const Index r = p.G.rows();
  p.G.conservativeResize(r + 1, p.c.size());
  p.h.conservativeResize(r + 1);
  p.G.row(r) = g.transpose();
  p.h(r) = rhs;
}

}  // namespace detail

/// Minimizes base.c^T x over the base rows intersected with every SOC
/// constraint. Starts from the polyhedral relaxation w_0 >= |w_j| and adds,
/// for each violated constraint, the gradient cut of ||tail(w)|| - w_0 at the
/// current point, until the largest violation is at most opt.tol.
inline CutResult solve_with_soc_cuts(const LpProblem& base, std::span<const SocConstraint> socs,
                                     const CutOptions& opt = {}) {
  const Index n = base.num_vars();
  LpProblem work = base;
  if (work.G.rows() == 0) {
    work.G.resize(0, n);
    work.h.resize(0);
  }
  for (const auto& s : socs) {
    require_dim(s.M.cols(), n, "SOC constraint columns");
    require_dim(s.m.size(), s.M.rows(), "SOC constraint offset");
    const Index k = s.M.rows();
    for (Index j = 1; j < k; ++j) {
      for (double sign : {1.0, -1.0}) {
        // sign*w_j - w_0 <= 0
        const Vector g = sign * s.M.row(j).transpose() - s.M.row(0).transpose();
        detail::append_row(work, g, -(sign * s.m(j) - s.m(0)));
      }
    }
    if (k == 1) detail::append_row(work, -s.M.row(0).transpose(), s.m(0));
  }

  CutResult res;
  LpProblem boxed = work;
  res.box_rows_begin = boxed.G.rows();
  for (Index k = 0; k < n; ++k) {
    Vector e = Vector::Zero(n);
    e(k) = 1.0;
    detail::append_row(boxed, e, opt.box);
    detail::append_row(boxed, -e, opt.box);
  }
  // Cuts are inserted before the box rows so the box stays at the end.
  auto insert_cut = [&](const Vector& g, double rhs) {
    const Index nb = 2 * n;
    const Index r = boxed.G.rows();
    boxed.G.conservativeResize(r + 1, n);
    boxed.h.conservativeResize(r + 1);
    for (Index i = r; i > r - nb; --i) {
      boxed.G.row(i) = boxed.G.row(i - 1);
      boxed.h(i) = boxed.h(i - 1);
    }
    boxed.G.row(r - nb) = g.transpose();
    boxed.h(r - nb) = rhs;
    ++res.box_rows_begin;
  };

  for (res.rounds = 1; res.rounds <= opt.max_rounds; ++res.rounds) {
    res.lp = solve_lp(boxed, opt.lp);
    if (res.lp.status != LpStatus::Optimal) break;
    res.max_violation = 0.0;
    int added = 0;
    for (const auto& s : socs) {
      const Vector w = s.M * res.lp.x + s.m;
      const double tail = detail::soc_tail_norm(w);
      const double viol = tail - w(0);
      res.max_violation = std::max(res.max_violation, viol);
      if (viol <= opt.tol) continue;
      Vector normal = Vector::Zero(w.size());
      normal(0) = -1.0;
      if (tail > 0.0) normal.tail(w.size() - 1) = w.tail(w.size() - 1) / tail;
      normal /= normal.norm();
      insert_cut(s.M.transpose() * normal, -normal.dot(s.m));
      ++added;
    }
    res.cuts += added;
    if (added == 0) {
      res.converged = true;
      break;
    }
  }
  if (res.rounds > opt.max_rounds) res.rounds = opt.max_rounds;
  res.final_problem = boxed;
  if (res.lp.status == LpStatus::Optimal) {
    for (Index r = res.box_rows_begin; r < boxed.G.rows(); ++r) {
      if (boxed.G.row(r).dot(res.lp.x) >= boxed.h(r) - 1e-6 * opt.box) res.box_active = true;
    }
  }
  return res;
}

}  // namespace robustfo
