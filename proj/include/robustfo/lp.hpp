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

// Dense two-phase primal simplex for
//
//     min c^T x   s.t.  G x <= h,  Geq x = heq,  x free.
//
// Free variables are split (x = x+ - x-), inequality rows receive slacks and
// rows with negative right-hand side receive phase-one artificials. Ratio-test
// ties are broken lexicographically on the initial basis columns; after a run
// of non-improving pivots the entering rule falls back to Bland's rule. The
// final basis is refactored with Eigen so the reported x and duals are
// accurate to working precision rather than to the accumulated tableau error.

#pragma once

#include "robustfo/common.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace robustfo {

struct LpProblem {
  Vector c;
  Matrix G;
  Vector h;
  Matrix Geq;
  Vector heq;

  Index num_vars() const { return c.size(); }

  void validate() const {
    const Index n = c.size();
    if (G.size() > 0 || h.size() > 0) {
      require_dim(G.cols(), n, "LpProblem G columns");
      require_dim(h.size(), G.rows(), "LpProblem h");
    }
    if (Geq.size() > 0 || heq.size() > 0) {
      require_dim(Geq.cols(), n, "LpProblem Geq columns");
      require_dim(heq.size(), Geq.rows(), "LpProblem heq");
    }
    const bool finite = c.allFinite() && G.allFinite() && h.allFinite() && Geq.allFinite() &&
                        heq.allFinite();
    if (!finite) throw std::invalid_argument("LpProblem has non-finite entries");
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded, NumericalFailure };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::NumericalFailure: return "numerical_failure";
  }
  return "?";
}

/// On Optimal: c + G^T dual + Geq^T dual_eq = 0, dual >= 0, and
/// value = c^T x = -(h^T dual + heq^T dual_eq).
struct LpSolution {
  LpStatus status = LpStatus::NumericalFailure;
  Vector x;
  double value = std::numeric_limits<double>::quiet_NaN();
  std::vector<Index> basis;  // basic columns of the split/slack standard form
  Vector dual;
  Vector dual_eq;
  int iterations = 0;
  std::string message;
};

struct LpOptions {
  double tol_feas = 1e-9;
  double pivot_tol = 1e-10;
  int stall_threshold = 25;
  int iteration_factor = 50;
};

namespace detail {

class Tableau {
 public:
  Tableau(Matrix body, std::vector<Index> basis) : t_(std::move(body)), basis_(std::move(basis)) {}

  Index rows() const { return t_.rows(); }
  Index cols() const { return t_.cols() - 1; }
  double rhs(Index r) const { return t_(r, t_.cols() - 1); }
  double at(Index r, Index c) const { return t_(r, c); }
  const std::vector<Index>& basis() const { return basis_; }

  void pivot(Index r, Index q) {
    t_.row(r) /= t_(r, q);
    for (Index i = 0; i < t_.rows(); ++i) {
      if (i == r) continue;
      const double f = t_(i, q);
      if (f != 0.0) t_.row(i) -= f * t_.row(r);
    }
    basis_[static_cast<std::size_t>(r)] = q;
  }

  void drop_row(Index r) {
    Matrix next(t_.rows() - 1, t_.cols());
    next.topRows(r) = t_.topRows(r);
    next.bottomRows(t_.rows() - r - 1) = t_.bottomRows(t_.rows() - r - 1);
    t_ = std::move(next);
    basis_.erase(basis_.begin() + r);
  }

 private:
  Matrix t_;
  std::vector<Index> basis_;
};

enum class PhaseOutcome { Optimal, Unbounded, IterationCap };

// Minimizes cost^T y over the tableau's feasible basic solutions, entering
// only columns with allowed[j]. `lex_cols` are the initial basis columns used
// for lexicographic tie-breaking in the ratio test.
inline PhaseOutcome run_phase(Tableau& tab, const Vector& cost, const std::vector<char>& allowed,
                              const std::vector<Index>& lex_cols, const LpOptions& opt,
                              int& iterations, int cap) {
  const Index m = tab.rows();
  const Index ncols = tab.cols();
  const double opt_tol = 1e-11 * (1.0 + cost.cwiseAbs().maxCoeff());
  bool bland = false;
  int stall = 0;
  double last_obj = std::numeric_limits<double>::infinity();

  for (;;) {
    if (iterations >= cap) return PhaseOutcome::IterationCap;

    // reduced costs d_j = cost_j - cost_B^T T_j
    Vector cb(m);
    for (Index i = 0; i < m; ++i) cb(i) = cost(tab.basis()[static_cast<std::size_t>(i)]);
    double obj = 0.0;
    for (Index i = 0; i < m; ++i) obj += cb(i) * tab.rhs(i);

    if (obj < last_obj - 1e-14 * (1.0 + std::abs(obj))) {
      stall = 0;
      last_obj = obj;
    } else if (++stall >= opt.stall_threshold) {
      bland = true;
    }

    Index enter = -1;
    double best = -opt_tol;
    for (Index j = 0; j < ncols; ++j) {
      if (!allowed[static_cast<std::size_t>(j)]) continue;
      double d = cost(j);
      for (Index i = 0; i < m; ++i) d -= cb(i) * tab.at(i, j);
      if (d < best) {
        best = d;
        enter = j;
        if (bland) break;  // smallest improving index
      }
    }
    if (enter < 0) return PhaseOutcome::Optimal;

    Index leave = -1;
    double min_ratio = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < m; ++i) {
      const double a = tab.at(i, enter);
      if (a <= opt.pivot_tol) continue;
      const double ratio = std::max(tab.rhs(i), 0.0) / a;
      if (leave < 0 || ratio < min_ratio - 1e-12 * (1.0 + std::abs(min_ratio))) {
        leave = i;
        min_ratio = ratio;
        continue;
      }
      if (ratio > min_ratio + 1e-12 * (1.0 + std::abs(min_ratio))) continue;
      // tie
      if (bland) {
        if (tab.basis()[static_cast<std::size_t>(i)] < tab.basis()[static_cast<std::size_t>(leave)]) {
          leave = i;
        }
        continue;
      }
      const double al = tab.at(leave, enter);
      for (Index c : lex_cols) {
        const double vi = tab.at(i, c) / a;
        const double vl = tab.at(leave, c) / al;
        if (vi < vl - 1e-13) {
          leave = i;
          break;
        }
        if (vi > vl + 1e-13) break;
      }
    }
    if (leave < 0) return PhaseOutcome::Unbounded;
    tab.pivot(leave, enter);
    ++iterations;
  }
}

}  // namespace detail

inline LpSolution solve_lp(const LpProblem& p, const LpOptions& opt = {}) {
  p.validate();
  const Index n = p.num_vars();
  const Index mi = p.G.rows();
  const Index me = p.Geq.rows();
  const Index m = mi + me;
  const Index nstd = 2 * n + mi;  // x+, x-, slacks

  LpSolution sol;
  if (m == 0) {
    // unconstrained
    if (p.c.size() > 0 && p.c.cwiseAbs().maxCoeff() > 0.0) {
      sol.status = LpStatus::Unbounded;
      sol.message = "no constraints and nonzero objective";
      return sol;
    }
    sol.status = LpStatus::Optimal;
    sol.x = Vector::Zero(n);
    sol.value = 0.0;
    sol.dual = Vector::Zero(0);
    sol.dual_eq = Vector::Zero(0);
    return sol;
  }

  Matrix M = Matrix::Zero(m, nstd);
  Vector r(m);
  if (mi > 0) {
    M.block(0, 0, mi, n) = p.G;
    M.block(0, n, mi, n) = -p.G;
    M.block(0, 2 * n, mi, mi).setIdentity();
    r.head(mi) = p.h;
  }
  if (me > 0) {
    M.block(mi, 0, me, n) = p.Geq;
    M.block(mi, n, me, n) = -p.Geq;
    r.tail(me) = p.heq;
  }

  // Initial basis: slack where the row already has rhs >= 0, else artificial.
  std::vector<Index> basis(static_cast<std::size_t>(m));
  std::vector<Index> art_rows;
  for (Index i = 0; i < m; ++i) {
    if (i < mi && r(i) >= 0.0) {
      basis[static_cast<std::size_t>(i)] = 2 * n + i;
    } else {
      basis[static_cast<std::size_t>(i)] = nstd + static_cast<Index>(art_rows.size());
      art_rows.push_back(i);
    }
  }
  const Index nart = static_cast<Index>(art_rows.size());
  const Index ncols = nstd + nart;

  Matrix body = Matrix::Zero(m, ncols + 1);
  for (Index i = 0; i < m; ++i) {
    const double s = r(i) < 0.0 ? -1.0 : 1.0;
    body.row(i).head(nstd) = s * M.row(i);
    body(i, ncols) = s * r(i);
  }
  for (Index a = 0; a < nart; ++a) body(art_rows[static_cast<std::size_t>(a)], nstd + a) = 1.0;

  detail::Tableau tab(std::move(body), basis);
  const std::vector<Index> lex_cols = basis;
  const int cap = opt.iteration_factor * static_cast<int>(m + ncols);

  // Phase one
  if (nart > 0) {
    Vector cost1 = Vector::Zero(ncols);
    cost1.tail(nart).setOnes();
    std::vector<char> allowed(static_cast<std::size_t>(ncols), 1);
    const auto out = detail::run_phase(tab, cost1, allowed, lex_cols, opt, sol.iterations, cap);
    if (out == detail::PhaseOutcome::IterationCap) {
      sol.status = LpStatus::NumericalFailure;
      sol.message = "iteration cap reached in phase one";
      return sol;
    }
    double infeas = 0.0;
    for (Index i = 0; i < tab.rows(); ++i) {
      if (tab.basis()[static_cast<std::size_t>(i)] >= nstd) infeas += tab.rhs(i);
    }
    const double scale = 1.0 + (r.size() > 0 ? r.cwiseAbs().maxCoeff() : 0.0);
    if (infeas > opt.tol_feas * scale) {
      sol.status = LpStatus::Infeasible;
      sol.message = "phase one optimum " + std::to_string(infeas) + " > 0";
      return sol;
    }
  }

  // Drive remaining artificials out of the basis; drop redundant rows.
  std::vector<Index> row_of(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) row_of[static_cast<std::size_t>(i)] = i;
  for (Index i = 0; i < tab.rows();) {
    if (tab.basis()[static_cast<std::size_t>(i)] < nstd) {
      ++i;
      continue;
    }
    Index best = -1;
    double mag = opt.pivot_tol;
    for (Index j = 0; j < nstd; ++j) {
      if (std::abs(tab.at(i, j)) > mag) {
        mag = std::abs(tab.at(i, j));
        best = j;
      }
    }
    if (best >= 0) {
      tab.pivot(i, best);
      ++i;
    } else {
      tab.drop_row(i);
      row_of.erase(row_of.begin() + i);
    }
  }

  // Phase two
  Vector cost2 = Vector::Zero(ncols);
  cost2.head(n) = p.c;
  cost2.segment(n, n) = -p.c;
  std::vector<char> allowed(static_cast<std::size_t>(ncols), 1);
  for (Index j = nstd; j < ncols; ++j) allowed[static_cast<std::size_t>(j)] = 0;
  const auto out = detail::run_phase(tab, cost2, allowed, lex_cols, opt, sol.iterations, cap);
  if (out == detail::PhaseOutcome::IterationCap) {
    sol.status = LpStatus::NumericalFailure;
    sol.message = "iteration cap reached in phase two";
    return sol;
  }
  if (out == detail::PhaseOutcome::Unbounded) {
    sol.status = LpStatus::Unbounded;
    sol.message = "objective unbounded below";
    return sol;
  }

  // Read the basic solution off the tableau, then refactor the basis.
  const Index mk = tab.rows();
  Vector xstd = Vector::Zero(nstd);
  for (Index i = 0; i < mk; ++i) xstd(tab.basis()[static_cast<std::size_t>(i)]) = tab.rhs(i);
  Vector y_kept = Vector::Zero(mk);
  if (mk > 0) {
    Matrix B(mk, mk);
    Vector rk(mk), cb(mk);
    for (Index i = 0; i < mk; ++i) {
      rk(i) = r(row_of[static_cast<std::size_t>(i)]);
      for (Index k = 0; k < mk; ++k) {
        B(k, i) = M(row_of[static_cast<std::size_t>(k)], tab.basis()[static_cast<std::size_t>(i)]);
      }
      cb(i) = cost2(tab.basis()[static_cast<std::size_t>(i)]);
    }
    Eigen::FullPivLU<Matrix> lu(B);
    if (lu.isInvertible()) {
      const Vector xb = lu.solve(rk);
      xstd.setZero();
      for (Index i = 0; i < mk; ++i) xstd(tab.basis()[static_cast<std::size_t>(i)]) = xb(i);
      y_kept = lu.transpose().solve(cb);
    } else {
      sol.status = LpStatus::NumericalFailure;
      sol.message = "final basis is singular";
      return sol;
    }
  }
  Vector y = Vector::Zero(m);
  for (Index i = 0; i < mk; ++i) y(row_of[static_cast<std::size_t>(i)]) = y_kept(i);

  sol.x = xstd.head(n) - xstd.segment(n, n);
  sol.value = p.c.dot(sol.x);
  sol.dual = -y.head(mi);
  sol.dual_eq = -y.tail(me);
  sol.basis = tab.basis();
  std::sort(sol.basis.begin(), sol.basis.end());

  // KKT check on the refactored solution.
  const double xs = 1.0 + (n > 0 ? sol.x.cwiseAbs().maxCoeff() : 0.0);
  const double tol = opt.tol_feas;
  for (Index i = 0; i < mi; ++i) {
    const double res = p.G.row(i).dot(sol.x) - p.h(i);
    const double sc = 1.0 + std::abs(p.h(i)) + p.G.row(i).cwiseAbs().sum() * xs;
    if (res > tol * sc) {
      sol.status = LpStatus::NumericalFailure;
      sol.message = "primal infeasible after refactorization (row " + std::to_string(i) + ")";
      return sol;
    }
    const double ds = 1.0 + std::abs(sol.dual(i));
    if (sol.dual(i) < -tol * ds || std::abs(sol.dual(i) * res) > tol * sc * ds) {
      sol.status = LpStatus::NumericalFailure;
      sol.message = "dual sign or complementarity violated (row " + std::to_string(i) + ")";
      return sol;
    }
  }
  for (Index i = 0; i < me; ++i) {
    const double res = p.Geq.row(i).dot(sol.x) - p.heq(i);
    if (std::abs(res) > tol * (1.0 + std::abs(p.heq(i)) + p.Geq.row(i).cwiseAbs().sum() * xs)) {
      sol.status = LpStatus::NumericalFailure;
      sol.message = "equality row " + std::to_string(i) + " violated after refactorization";
      return sol;
    }
  }
  Vector station = p.c;
  if (mi > 0) station += p.G.transpose() * sol.dual;
  if (me > 0) station += p.Geq.transpose() * sol.dual_eq;
  const double dscale = 1.0 + p.c.cwiseAbs().maxCoeff() +
                        (mi > 0 ? sol.dual.cwiseAbs().maxCoeff() * p.G.cwiseAbs().maxCoeff() : 0.0);
  if (n > 0 && station.cwiseAbs().maxCoeff() > tol * dscale) {
    sol.status = LpStatus::NumericalFailure;
    sol.message = "stationarity residual " + std::to_string(station.cwiseAbs().maxCoeff());
    return sol;
  }
  sol.status = LpStatus::Optimal;
  return sol;
}

/// Indices of inequality rows tight at x (relative tolerance).
inline std::vector<Index> active_rows(const LpProblem& p, const Vector& x, double tol) {
  std::vector<Index> out;
  for (Index i = 0; i < p.G.rows(); ++i) {
    const double res = p.G.row(i).dot(x) - p.h(i);
    if (std::abs(res) <= tol * (1.0 + std::abs(p.h(i)))) out.push_back(i);
  }
  return out;
}

/// Nondegenerate shortcut: solves A_B gamma = w by LU with partial pivoting.
/// Throws SingularBasis when A_B is singular or badly conditioned, in which
/// case the caller should solve the first-order LP instead.
inline Vector closed_form_gamma(const Matrix& basis_rows, const Vector& w,
                                double rcond_floor = 1e-12) {
  if (basis_rows.rows() != basis_rows.cols()) {
    throw DimensionError("closed_form_gamma: basis matrix must be square");
  }
  require_dim(w.size(), basis_rows.rows(), "closed_form_gamma rhs");
  if (basis_rows.rows() == 0) return Vector::Zero(0);
  Eigen::PartialPivLU<Matrix> lu(basis_rows);
  const double rc = lu.rcond();
  if (!(rc > rcond_floor)) {
    throw SingularBasis("closed_form_gamma: basis is singular (rcond " + std::to_string(rc) +
                        "); use the LP path");
  }
  return lu.solve(w);
}

}  // namespace robustfo
