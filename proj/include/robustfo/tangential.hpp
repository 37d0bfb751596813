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

// The tangential (first-order) problem at a nominal solution xbar:
//
//     min c^T g  s.t.  A_i g + L_i(U_i) subset T_{Q_i}(A_i xbar - b_i)  for all i,
//
// with L_i(dA, db) = dA xbar - db. Each block is classified by its tangent
// cone: full space blocks drop out, halfspace blocks give one linear row per
// normal v,  v^T A_i g <= -h_{U_i}(v),  and apex blocks (T = Q) keep one cone
// constraint per vertex of L_i(U_i).

#pragma once

#include "robustfo/cones.hpp"
#include "robustfo/cutting_plane.hpp"
#include "robustfo/lp.hpp"
#include "robustfo/nnls.hpp"
#include "robustfo/program.hpp"
#include "robustfo/uncertainty.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace robustfo {

struct HalfspaceRow {
  Index block = 0;
  Vector normal;   // unit normal v in block residual space
  Vector coeffs;   // A_i^T v
  double threshold = 0.0;  // -support(U_i, L_i, v)
};

struct SelfConeBlock {
  Index block = 0;
  Matrix A;
  Cone cone = Cone::orthant(1);
  std::vector<Vector> vertices;  // vertices of L_i(U_i)
};

enum class BlockRole { Dropped, Halfspaces, SelfCone };

inline const char* to_string(BlockRole r) {
  switch (r) {
    case BlockRole::Dropped: return "dropped";
    case BlockRole::Halfspaces: return "halfspaces";
    case BlockRole::SelfCone: return "selfcone";
  }
  return "?";
}

struct TangentialProblem {
  Vector c;
  std::vector<HalfspaceRow> rows;
  std::vector<SelfConeBlock> selfcone;
  std::vector<BlockRole> roles;  // one per block of the source program

  Index num_vars() const { return c.size(); }

  /// The halfspace rows as an LP (no apex blocks).
  LpProblem halfspace_lp() const {
    LpProblem lp;
    lp.c = c;
    lp.G.resize(static_cast<Index>(rows.size()), c.size());
    lp.h.resize(static_cast<Index>(rows.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      lp.G.row(static_cast<Index>(r)) = rows[r].coeffs.transpose();
      lp.h(static_cast<Index>(r)) = rows[r].threshold;
    }
    return lp;
  }
};

struct Certificate {
  bool certified = false;
  double residual = std::numeric_limits<double>::infinity();
  std::vector<Index> rows;  // active rows used
  Vector weights;           // lambda >= 0, one per active row
};

struct TangentialSolution {
  LpStatus status = LpStatus::NumericalFailure;
  Vector gamma;
  double vtilde = std::numeric_limits<double>::quiet_NaN();
  std::vector<Index> active;  // indices into (G, h)
  bool unique = false;
  Certificate certificate;
  double cq_margin = std::numeric_limits<double>::quiet_NaN();
  bool cq_ok = false;
  int cuts = 0;
  // Final linear description the optimum was computed on: the halfspace
  // rows, followed by expanded apex rows or accumulated cuts.
  Matrix G;
  Vector h;
  std::string message;
};

struct TangentialOptions {
  Tolerances tol;
  std::uint64_t seed = 0;
  double probe_mu = 1e-6;
  double probe_distance = 1e-5;
  double certificate_tol = 1e-7;
  CutOptions cuts;
};

/// Assembles the tangential problem of p at xbar.
inline TangentialProblem build_tangential(const ConicProgram& p, const Vector& xbar,
                                          const Tolerances& tol = {}) {
  p.validate();
  require_dim(xbar.size(), p.num_vars(), "build_tangential xbar");
  const LMap L(xbar);
  TangentialProblem tp;
  tp.c = p.c;
  for (std::size_t i = 0; i < p.blocks.size(); ++i) {
    const Block& blk = p.blocks[i];
    const Vector z = p.residual(i, xbar) / p.residual_scale(i, xbar);
    TangentCone t;
    try {
      t = tangent_cone_at(blk.cone, z, tol.act);
    } catch (const InfeasiblePoint& e) {
      throw InfeasiblePoint("block " + std::to_string(i) + ": " + e.what());
    }
    switch (t.kind) {
      case TangentKind::FullSpace:
        tp.roles.push_back(BlockRole::Dropped);
        break;
      case TangentKind::Halfspaces:
        tp.roles.push_back(BlockRole::Halfspaces);
        for (Index r = 0; r < t.normals.rows(); ++r) {
          HalfspaceRow row;
          row.block = static_cast<Index>(i);
          row.normal = t.normals.row(r).transpose();
          row.coeffs = blk.A.transpose() * row.normal;
          row.threshold = -support(p.uncertainty[i], L, row.normal);
          tp.rows.push_back(std::move(row));
        }
        break;
      case TangentKind::SelfCone: {
        tp.roles.push_back(BlockRole::SelfCone);
        SelfConeBlock sc;
        sc.block = static_cast<Index>(i);
        sc.A = blk.A;
        sc.cone = blk.cone;
        try {
          sc.vertices = l_image_vertices(p.uncertainty[i], L);
        } catch (const UnsupportedCombination& e) {
          throw UnsupportedCombination("block " + std::to_string(i) +
                                       " sits at the cone apex but its perturbation image " +
                                       "cannot be enumerated: " + e.what());
        }
        tp.selfcone.push_back(std::move(sc));
        break;
      }
    }
  }
  return tp;
}

/// First-order problem of a linear program: one row A_j g <= -max L_j(U) for
/// every row j tight at xbar. Only orthant blocks are accepted.
inline TangentialProblem first_order_problem_lp(const ConicProgram& p, const Vector& xbar,
                                                const Tolerances& tol = {}) {
  p.validate();
  require_dim(xbar.size(), p.num_vars(), "first_order_problem_lp xbar");
  const LMap L(xbar);
  TangentialProblem tp;
  tp.c = p.c;
  for (std::size_t i = 0; i < p.blocks.size(); ++i) {
    const Block& blk = p.blocks[i];
    if (blk.cone.kind() != ConeKind::OrthantNonpositive) {
      throw UnsupportedCombination("first_order_problem_lp: block " + std::to_string(i) +
                                   " is not an orthant block");
    }
    const double scale = p.residual_scale(i, xbar);
    bool any = false;
    for (Index j = 0; j < blk.A.rows(); ++j) {
      const double slack = (blk.A.row(j).dot(xbar) - blk.b(j)) / scale;
      if (slack > tol.act) {
        throw InfeasiblePoint("first_order_problem_lp: row " + std::to_string(j) + " of block " +
                              std::to_string(i) + " is violated at xbar");
      }
      if (slack < -tol.act) continue;
      Vector e = Vector::Zero(blk.A.rows());
      e(j) = 1.0;
      HalfspaceRow row;
      row.block = static_cast<Index>(i);
      row.normal = e;
      row.coeffs = blk.A.row(j).transpose();
      row.threshold = -support(p.uncertainty[i], L, e);
      tp.rows.push_back(std::move(row));
      any = true;
    }
    tp.roles.push_back(any ? BlockRole::Halfspaces : BlockRole::Dropped);
  }
  return tp;
}

namespace detail {

struct RawSolve {
  LpStatus status = LpStatus::NumericalFailure;
  Vector x;
  Matrix G;
  Vector h;
  int cuts = 0;
  std::string message;
};

inline RawSolve solve_tangential_lp(const TangentialProblem& tp, const Vector& c,
                                    const TangentialOptions& opt) {
  LpProblem lp = tp.halfspace_lp();
  lp.c = c;
  LpOptions lo = opt.cuts.lp;
  lo.tol_feas = opt.tol.feas;
  lo.pivot_tol = opt.tol.pivot;

  std::vector<SocConstraint> socs;
  for (const auto& sc : tp.selfcone) {
    if (sc.cone.kind() == ConeKind::SecondOrder) {
      for (const auto& u : sc.vertices) socs.push_back({sc.A, u});
      continue;
    }
    // Polyhedral apex: v^T (A g + u) <= 0 per defining row and vertex.
    const Matrix V = linear_normals(sc.cone);
    for (const auto& u : sc.vertices) {
      for (Index r = 0; r < V.rows(); ++r) {
        const Index k = lp.G.rows();
        lp.G.conservativeResize(k + 1, lp.c.size());
        lp.h.conservativeResize(k + 1);
        lp.G.row(k) = V.row(r) * sc.A;
        lp.h(k) = -V.row(r).dot(u);
      }
    }
  }

  RawSolve out;
  if (socs.empty()) {
    const LpSolution s = solve_lp(lp, lo);
    out.status = s.status;
    out.x = s.x;
    out.G = lp.G;
    out.h = lp.h;
    out.message = s.message;
    return out;
  }
  CutOptions co = opt.cuts;
  co.lp = lo;
  const CutResult s = solve_with_soc_cuts(lp, socs, co);
  out.status = s.lp.status;
  out.x = s.lp.x;
  out.cuts = s.cuts;
  out.message = s.lp.message;
  out.G = s.final_problem.G.topRows(s.box_rows_begin);
  out.h = s.final_problem.h.head(s.box_rows_begin);
  if (s.lp.status == LpStatus::Optimal && s.box_active) {
    out.status = LpStatus::Unbounded;
    out.message = "minimizer reached the artificial box";
  } else if (s.lp.status == LpStatus::Optimal && !s.converged) {
    out.status = LpStatus::NumericalFailure;
    out.message = "cutting-plane limit reached with violation " + std::to_string(s.max_violation);
  }
  return out;
}

inline std::vector<Index> tight_rows(const Matrix& G, const Vector& h, const Vector& x,
                                     double tol) {
  std::vector<Index> out;
  for (Index r = 0; r < G.rows(); ++r) {
    const double slack = h(r) - G.row(r).dot(x);
    if (std::abs(slack) <= tol * (1.0 + std::abs(h(r)) + G.row(r).norm() * x.norm())) {
      out.push_back(r);
    }
  }
  return out;
}

}  // namespace detail

/// Checks optimality of sol.gamma by writing -c as a nonnegative combination
/// of the gradients of the rows tight at gamma (nonnegative least squares).
inline Certificate check_certificate(const TangentialProblem& tp, const TangentialSolution& sol,
                                     double tol_act = 1e-8, double residual_tol = 1e-7) {
  Certificate cert;
  if (sol.status != LpStatus::Optimal || sol.gamma.size() != tp.num_vars()) return cert;
  Matrix G = sol.G;
  Vector h = sol.h;
  if (G.rows() == 0 && G.cols() == 0) {
    const LpProblem lp = tp.halfspace_lp();
    G = lp.G;
    h = lp.h;
  }
  cert.rows = detail::tight_rows(G, h, sol.gamma, tol_act);
  Matrix M(tp.num_vars(), static_cast<Index>(cert.rows.size()));
  for (std::size_t k = 0; k < cert.rows.size(); ++k) {
    M.col(static_cast<Index>(k)) = G.row(cert.rows[k]).transpose();
  }
  const NnlsResult r = nnls(M, -tp.c);
  cert.weights = r.x;
  cert.residual = r.residual;
  cert.certified = r.residual <= residual_tol;
  return cert;
}

/// Largest s with v^T A_i g' <= -s on every halfspace row (and a polyhedral
/// inner approximation of the interior for apex blocks), |g'| <= 1, s <= 1.
/// A positive value certifies the interiority constraint qualification.
inline double cq_margin(const TangentialProblem& tp, const Tolerances& tol = {}) {
  const Index n = tp.num_vars();
  std::vector<Vector> rows;
  for (const auto& r : tp.rows) rows.push_back(r.coeffs);
  for (const auto& sc : tp.selfcone) {
    if (sc.cone.kind() == ConeKind::SecondOrder) {
      const Index k = sc.A.rows();
      const double w = std::sqrt(static_cast<double>(std::max<Index>(k - 1, 1)));
      if (k == 1) rows.push_back(-sc.A.row(0).transpose());
      for (Index j = 1; j < k; ++j) {
        for (double sign : {1.0, -1.0}) {
          rows.push_back((sign * w * sc.A.row(j) - sc.A.row(0)).transpose());
        }
      }
    } else {
      const Matrix V = linear_normals(sc.cone);
      for (Index r = 0; r < V.rows(); ++r) rows.push_back((V.row(r) * sc.A).transpose());
    }
  }
  if (rows.empty()) return 1.0;
  LpProblem lp;
  lp.c = Vector::Zero(n + 1);
  lp.c(n) = -1.0;
  const Index m = static_cast<Index>(rows.size()) + 2 * n + 1;
  lp.G = Matrix::Zero(m, n + 1);
  lp.h = Vector::Zero(m);
  Index k = 0;
  for (const auto& g : rows) {
    const double nrm = g.norm();
    if (nrm > 0.0) lp.G.row(k).head(n) = g.transpose() / nrm;
    lp.G(k, n) = 1.0;
    ++k;
  }
  for (Index j = 0; j < n; ++j) {
    lp.G(k, j) = 1.0;
    lp.h(k++) = 1.0;
    lp.G(k, j) = -1.0;
    lp.h(k++) = 1.0;
  }
  lp.G(k, n) = 1.0;
  lp.h(k) = 1.0;
  LpOptions lo;
  lo.tol_feas = tol.feas;
  const LpSolution s = solve_lp(lp, lo);
  if (s.status != LpStatus::Optimal) return -std::numeric_limits<double>::infinity();
  return s.x(n);
}

/// Solves the tangential problem, probes uniqueness of the minimizer,
/// computes the constraint-qualification margin and the optimality
/// certificate.
inline TangentialSolution solve_tangential(const TangentialProblem& tp,
                                           const TangentialOptions& opt = {}) {
  TangentialSolution sol;
  const detail::RawSolve raw = detail::solve_tangential_lp(tp, tp.c, opt);
  sol.status = raw.status;
  sol.cuts = raw.cuts;
  sol.message = raw.message;
  sol.cq_margin = cq_margin(tp, opt.tol);
  sol.cq_ok = sol.cq_margin > 0.0;
  if (raw.status != LpStatus::Optimal) return sol;

  sol.gamma = raw.x;
  sol.vtilde = tp.c.dot(raw.x);
  sol.G = raw.G;
  sol.h = raw.h;
  sol.active = detail::tight_rows(sol.G, sol.h, sol.gamma, opt.tol.act);

  // Uniqueness probe: perturb c by +-mu r for a seeded random unit r.
  const Index n = tp.num_vars();
  sol.unique = true;
  if (n > 0) {
    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> gauss;
    Vector r(n);
    for (Index j = 0; j < n; ++j) r(j) = gauss(rng);
    r /= r.norm();
    for (double sign : {1.0, -1.0}) {
      const detail::RawSolve probe =
          detail::solve_tangential_lp(tp, tp.c + sign * opt.probe_mu * r, opt);
      if (probe.status != LpStatus::Optimal ||
          (probe.x - sol.gamma).norm() > opt.probe_distance) {
        sol.unique = false;
      }
    }
  }
  sol.certificate = check_certificate(tp, sol, opt.tol.act, opt.certificate_tol);
  return sol;
}

/// Square, invertible halfspace system with no apex blocks: the tangential
/// minimizer is the vertex A_B^{-1} w. Returns nullopt otherwise.
inline std::optional<Vector> closed_form_solution(const TangentialProblem& tp) {
  if (!tp.selfcone.empty() || static_cast<Index>(tp.rows.size()) != tp.num_vars()) {
    return std::nullopt;
  }
  const LpProblem lp = tp.halfspace_lp();
  try {
    return closed_form_gamma(lp.G, lp.h);
  } catch (const SingularBasis&) {
    return std::nullopt;
  }
}

}  // namespace robustfo
