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

// Value of the tangential problem as a function of the perturbation set,
// v(U) = min { c^T g : A g + L(U) subset T_Q(A xbar - b) }, and the algebra
// it obeys: positive homogeneity, monotonicity under inclusion, translation
// shifts, and subadditivity under Minkowski sums (with equality for
// nondegenerate linear programs).

#pragma once

#include "robustfo/program.hpp"
#include "robustfo/tangential.hpp"
#include "robustfo/uncertainty.hpp"

#include <random>
#include <string>
#include <vector>

namespace robustfo {

/// One perturbation set per block of a program.
using BlockSets = std::vector<UncertaintySet>;

struct SolveError : std::runtime_error {
  SolveError(LpStatus s, const std::string& what) : std::runtime_error(what), status(s) {}
  LpStatus status;
};

inline BlockSets scale_sets(double lambda, const BlockSets& s) {
  BlockSets out;
  for (const auto& u : s) out.push_back(UncertaintySet::scaled(lambda, u));
  return out;
}

inline BlockSets sum_sets(const BlockSets& a, const BlockSets& b) {
  require_dim(static_cast<Index>(b.size()), static_cast<Index>(a.size()), "sum_sets block count");
  BlockSets out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(UncertaintySet::minkowski_sum(a[i], b[i]));
  return out;
}

inline BlockSets translate_sets(const std::vector<Perturbation>& shifts, const BlockSets& s) {
  require_dim(static_cast<Index>(shifts.size()), static_cast<Index>(s.size()), "translate_sets block count");
  BlockSets out;
  for (std::size_t i = 0; i < s.size(); ++i) out.push_back(UncertaintySet::translated(shifts[i], s[i]));
  return out;
}

/// Full tangential solve with the given per-block sets.
inline TangentialSolution tangential_with(const ConicProgram& p, const Vector& xbar,
                                          const BlockSets& sets, const TangentialOptions& opt = {}) {
  const ConicProgram q = with_uncertainty(p, sets);
  return solve_tangential(build_tangential(q, xbar, opt.tol), opt);
}

/// v(U): optimal value of the tangential problem. Throws SolveError when the
/// tangential problem is not solved to optimality.
inline double v_of(const ConicProgram& p, const Vector& xbar, const BlockSets& sets,
                   const TangentialOptions& opt = {}) {
  const TangentialSolution s = tangential_with(p, xbar, sets, opt);
  if (s.status != LpStatus::Optimal) {
    throw SolveError(s.status, std::string("tangential problem is ") + to_string(s.status) +
                                   (s.message.empty() ? "" : ": " + s.message));
  }
  return s.vtilde;
}

/// Shift g with A_i g = -L_i(shift_i) on every tangential row, so that
/// v(U + shift) = v(U) + c^T g. Throws when no such g exists.
inline Vector translation_shift(const ConicProgram& p, const Vector& xbar,
                                const std::vector<Perturbation>& shifts,
                                const Tolerances& tol = {}) {
  const ConicProgram zero = with_uncertainty(p, [&] {
    BlockSets z;
    for (const auto& b : p.blocks) z.push_back(UncertaintySet::zero(b.A.rows(), p.num_vars()));
    return z;
  }());
  const TangentialProblem tp = build_tangential(zero, xbar, tol);
  const LMap L(xbar);
  // Apex blocks constrain the full residual vector, so every coordinate of
  // their shift must be absorbed.
  std::vector<Vector> lhs;
  std::vector<double> rhs;
  for (const auto& r : tp.rows) {
    lhs.push_back(r.coeffs);
    rhs.push_back(-r.normal.dot(L(shifts[static_cast<std::size_t>(r.block)])));
  }
  for (const auto& sc : tp.selfcone) {
    const Vector s = L(shifts[static_cast<std::size_t>(sc.block)]);
    for (Index j = 0; j < sc.A.rows(); ++j) {
      lhs.push_back(sc.A.row(j).transpose());
      rhs.push_back(-s(j));
    }
  }
  const Index n = p.num_vars();
  Matrix M(static_cast<Index>(lhs.size()), n);
  Vector y(static_cast<Index>(rhs.size()));
  for (std::size_t k = 0; k < lhs.size(); ++k) {
    M.row(static_cast<Index>(k)) = lhs[k].transpose();
    y(static_cast<Index>(k)) = rhs[k];
  }
  if (M.rows() == 0) return Vector::Zero(n);
  const Vector g = M.colPivHouseholderQr().solve(y);
  const double res = (M * g - y).norm();
  if (res > 1e-9 * (1.0 + y.norm())) {
    throw std::domain_error("translation_shift: shift is not in the range of the active rows");
  }
  return g;
}

/// Sampled inclusion test small subset big: support dominance along the
/// coordinate axes (both signs) and `directions` random unit directions.
/// Exact for boxes on the axes; a sampling check otherwise.
inline bool contains_by_support(const UncertaintySet& big, const UncertaintySet& small,
                                const LMap& L, int directions = 64, std::uint64_t seed = 0,
                                double tol = 1e-12) {
  const Index k = big.rows();
  std::vector<Vector> dirs;
  for (Index j = 0; j < k; ++j) {
    Vector e = Vector::Zero(k);
    e(j) = 1.0;
    dirs.push_back(e);
    dirs.push_back(-e);
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  for (int d = 0; d < directions; ++d) {
    Vector y(k);
    for (Index j = 0; j < k; ++j) y(j) = gauss(rng);
    dirs.push_back(y / y.norm());
  }
  for (const auto& y : dirs) {
    const double hs = support(small, L, y), hb = support(big, L, y);
    if (hs > hb + tol * (1.0 + std::abs(hb))) return false;
  }
  return true;
}

struct Nondegeneracy {
  bool holds = false;
  Vector multipliers;  // lambda with -c = sum lambda_i * row_i
  std::string diagnosis;
};

/// Checks the hypotheses under which v is additive: the tangential rows form
/// a square invertible matrix and -c is a strictly positive combination of
/// them.
inline Nondegeneracy check_nondegenerate(const TangentialProblem& tp, double tol = 1e-9) {
  Nondegeneracy out;
  if (!tp.selfcone.empty()) {
    out.diagnosis = "apex (self-cone) blocks present";
    return out;
  }
  const Index n = tp.num_vars();
  if (static_cast<Index>(tp.rows.size()) != n) {
    out.diagnosis = std::to_string(tp.rows.size()) + " tangential rows for " + std::to_string(n) +
                    " variables";
    return out;
  }
  const Matrix G = tp.halfspace_lp().G;
  Eigen::PartialPivLU<Matrix> lu(G.transpose());
  if (n > 0 && !(lu.rcond() > 1e-12)) {
    out.diagnosis = "tangential rows are singular";
    return out;
  }
  out.multipliers = n > 0 ? Vector(lu.solve(-tp.c)) : Vector();
  const double floor = tol * (1.0 + (n > 0 ? out.multipliers.cwiseAbs().maxCoeff() : 0.0));
  if (n > 0 && out.multipliers.minCoeff() <= floor) {
    out.diagnosis = "multiplier " + std::to_string(out.multipliers.minCoeff()) + " is not > 0";
    return out;
  }
  out.holds = true;
  out.diagnosis = "square invertible rows with strictly positive multipliers";
  return out;
}

struct AdditionReport {
  double lambda1 = 1.0;
  double lambda2 = 1.0;
  double v_left = 0.0;
  double v_right = 0.0;
  double v_sum = 0.0;
  double gap = 0.0;  // lambda1 v_left + lambda2 v_right - v_sum
  double tol = 1e-9;
  bool subadditive = true;        // gap >= -tol
  bool nondegenerate = false;     // additivity hypotheses hold
  bool equality_holds = false;    // gap <= tol
  bool violation = false;         // subadditivity broken, or additivity broken under its hypotheses
  std::string diagnosis;
};

inline AdditionReport addition_report(const ConicProgram& p, const Vector& xbar,
                                      const BlockSets& s1, const BlockSets& s2,
                                      double lambda1 = 1.0, double lambda2 = 1.0,
                                      const TangentialOptions& opt = {}, double tol = 1e-9) {
  if (!(lambda1 >= 0.0) || !(lambda2 >= 0.0)) {
    throw std::invalid_argument("addition_report: weights must be >= 0");
  }
  AdditionReport rep;
  rep.lambda1 = lambda1;
  rep.lambda2 = lambda2;
  rep.tol = tol;
  rep.v_left = v_of(p, xbar, s1, opt);
  rep.v_right = v_of(p, xbar, s2, opt);
  rep.v_sum = v_of(p, xbar, sum_sets(scale_sets(lambda1, s1), scale_sets(lambda2, s2)), opt);
  rep.gap = lambda1 * rep.v_left + lambda2 * rep.v_right - rep.v_sum;
  const double scale = 1.0 + std::abs(rep.v_left) + std::abs(rep.v_right);
  rep.subadditive = rep.gap >= -tol * scale;
  rep.equality_holds = rep.gap <= tol * scale;
  const Nondegeneracy nd = check_nondegenerate(build_tangential(with_uncertainty(p, s1), xbar, opt.tol));
  rep.nondegenerate = nd.holds;
  rep.diagnosis = nd.diagnosis;
  rep.violation = !rep.subadditive || (rep.nondegenerate && !rep.equality_holds);
  return rep;
}

}  // namespace robustfo
