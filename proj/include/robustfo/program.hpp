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

#include "robustfo/cones.hpp"
#include "robustfo/cutting_plane.hpp"
#include "robustfo/lp.hpp"
#include "robustfo/uncertainty.hpp"

#include <string>
#include <vector>

namespace robustfo {

/// Constraint A x - b in cone.
struct Block {
  Matrix A;
  Vector b;
  Cone cone;
};

/// min c^T x + d  s.t.  A_i x - b_i in Q_i, with perturbation set
/// uncertainty[i] acting on (A_i, b_i).
struct ConicProgram {
  Vector c;
  double d = 0.0;
  std::vector<Block> blocks;
  std::vector<UncertaintySet> uncertainty;

  Index num_vars() const { return c.size(); }

  void validate() const {
    const Index n = c.size();
    if (!c.allFinite() || !std::isfinite(d)) throw std::invalid_argument("objective is not finite");
    require_dim(static_cast<Index>(uncertainty.size()), static_cast<Index>(blocks.size()),
                "uncertainty set count");
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      const auto& blk = blocks[i];
      const std::string tag = "block " + std::to_string(i);
      require_dim(blk.A.cols(), n, (tag + " A columns").c_str());
      require_dim(blk.b.size(), blk.A.rows(), (tag + " b").c_str());
      require_dim(blk.cone.dim(), blk.A.rows(), (tag + " cone").c_str());
      if (!blk.A.allFinite() || !blk.b.allFinite()) {
        throw std::invalid_argument(tag + " data is not finite");
      }
      const auto& set = uncertainty[i];
      require_dim(set.rows(), blk.A.rows(), (tag + " uncertainty rows").c_str());
      require_dim(set.cols(), n, (tag + " uncertainty columns").c_str());
      if (auto check = validate_compact_convex(set); !check) {
        throw std::invalid_argument(tag + " uncertainty: " + check.diagnostic);
      }
    }
  }

  Vector residual(std::size_t i, const Vector& x) const { return blocks[i].A * x - blocks[i].b; }

  /// Positive scale dividing block i's residual before active-set tests.
  double residual_scale(std::size_t i, const Vector& x) const {
    const auto& blk = blocks[i];
    const double bn = blk.b.size() ? blk.b.cwiseAbs().maxCoeff() : 0.0;
    const Vector ax = blk.A * x;
    const double an = ax.size() ? ax.cwiseAbs().maxCoeff() : 0.0;
    return 1.0 + bn + an;
  }
};

/// Copy of p with every block's perturbation set replaced.
inline ConicProgram with_uncertainty(ConicProgram p, std::vector<UncertaintySet> sets) {
  p.uncertainty = std::move(sets);
  return p;
}

/// Rows (normals) v of block i's cone written as linear inequalities
/// v^T (A x - b) <= 0. Empty for second-order cones.
inline Matrix linear_normals(const Cone& cone) {
  switch (cone.kind()) {
    case ConeKind::OrthantNonpositive: return Matrix::Identity(cone.dim(), cone.dim());
    case ConeKind::Polyhedral: return cone.rows();
    case ConeKind::SecondOrder: return Matrix(0, cone.dim());
  }
  return {};
}

enum class BlockState { Interior, Boundary, Apex };

inline const char* to_string(BlockState s) {
  switch (s) {
    case BlockState::Interior: return "interior";
    case BlockState::Boundary: return "boundary";
    case BlockState::Apex: return "apex";
  }
  return "?";
}

struct NominalSolution {
  LpStatus status = LpStatus::NumericalFailure;
  Vector x;
  double value = 0.0;  // c^T x + d
  std::vector<BlockState> block_state;
  int cuts = 0;
  std::string message;
};

/// Solves the nominal problem. Orthant and polyhedral blocks are linear rows;
/// second-order cone blocks go through the cutting-plane loop.
inline NominalSolution solve_nominal(const ConicProgram& p, const Tolerances& tol = {}) {
  p.validate();
  const Index n = p.num_vars();
  LpProblem lp;
  lp.c = p.c;
  lp.G.resize(0, n);
  lp.h.resize(0);
  std::vector<SocConstraint> socs;
  for (const auto& blk : p.blocks) {
    if (blk.cone.kind() == ConeKind::SecondOrder) {
      socs.push_back({blk.A, -blk.b});
      continue;
    }
    const Matrix V = linear_normals(blk.cone);
    const Index r = lp.G.rows();
    lp.G.conservativeResize(r + V.rows(), n);
    lp.h.conservativeResize(r + V.rows());
    lp.G.bottomRows(V.rows()) = V * blk.A;
    lp.h.tail(V.rows()) = V * blk.b;
  }

  NominalSolution out;
  LpOptions lo;
  lo.tol_feas = tol.feas;
  lo.pivot_tol = tol.pivot;
  if (socs.empty()) {
    const LpSolution s = solve_lp(lp, lo);
    out.status = s.status;
    out.message = s.message;
    if (s.status != LpStatus::Optimal) return out;
    out.x = s.x;
  } else {
    CutOptions co;
    co.tol = 1e-2 * tol.act;
    co.lp = lo;
    const CutResult s = solve_with_soc_cuts(lp, socs, co);
    out.cuts = s.cuts;
    out.status = s.lp.status;
    out.message = s.lp.message;
    if (s.lp.status != LpStatus::Optimal) return out;
    if (s.box_active) {
      out.status = LpStatus::Unbounded;
      out.message = "solution reached the artificial box";
      return out;
    }
    if (!s.converged) {
      out.status = LpStatus::NumericalFailure;
      out.message = "cutting-plane round limit reached";
      return out;
    }
    out.x = s.lp.x;
  }
  out.value = p.c.dot(out.x) + p.d;
  for (std::size_t i = 0; i < p.blocks.size(); ++i) {
    const Vector z = p.residual(i, out.x) / p.residual_scale(i, out.x);
    const TangentCone t = tangent_cone_at(p.blocks[i].cone, z, tol.act);
    out.block_state.push_back(t.kind == TangentKind::FullSpace ? BlockState::Interior
                              : t.kind == TangentKind::SelfCone ? BlockState::Apex
                                                                : BlockState::Boundary);
  }
  return out;
}

}  // namespace robustfo
