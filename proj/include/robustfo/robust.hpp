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

#include "robustfo/lp.hpp"
#include "robustfo/program.hpp"
#include "robustfo/tangential.hpp"
#include "robustfo/uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace robustfo {

/// The robust problem with every perturbation set scaled by epsilon.
struct RobustInstance {
  ConicProgram base;
  double epsilon = 0.0;
};

/// Exact LP counterpart. The first `num_original` variables are x; the rest
/// are lifting variables (|x_k| bounds, epigraph variables).
struct RobustLp {
  LpProblem lp;
  Index num_original = 0;
};

namespace detail {

/// Sparse affine expression sum_j coef_j * var_j + constant.
struct AffineExpr {
  std::map<Index, double> coef;
  double constant = 0.0;

  void add(Index var, double a) {
    if (a != 0.0) coef[var] += a;
  }
  void add(const AffineExpr& o, double scale) {
    for (const auto& [v, a] : o.coef) add(v, scale * a);
    constant += scale * o.constant;
  }
};

class CounterpartBuilder {
 public:
  explicit CounterpartBuilder(Index n) : n_(n), num_vars_(n) {}

  Index num_vars() const { return num_vars_; }

  void add_row(const AffineExpr& lhs, double rhs) { rows_.push_back({lhs.coef, rhs - lhs.constant}); }

  // s_k >= |x_k|, created on first use and shared by all rows.
  Index abs_var(Index k) {
    if (abs_vars_.empty()) {
      for (Index j = 0; j < n_; ++j) {
        const Index s = num_vars_++;
        abs_vars_.push_back(s);
        AffineExpr up, down;
        up.add(j, 1.0);
        up.add(s, -1.0);
        down.add(j, -1.0);
        down.add(s, -1.0);
        add_row(up, 0.0);
        add_row(down, 0.0);
      }
    }
    return abs_vars_[static_cast<std::size_t>(k)];
  }

  Index new_var() { return num_vars_++; }

  // max over (dA, db) in set of v^T (dA x - db), scaled by `scale`, as an
  // affine expression over the (growing) variable list.
  AffineExpr worst_case(const UncertaintySet& set, const Vector& v, double scale) {
    using U = UncertaintySet;
    AffineExpr e;
    if (scale == 0.0) return e;
    std::visit(
        detail::overloaded{
            [&](const U::Rectangular& r) {
              for (Index j = 0; j < v.size(); ++j) {
                const double w = scale * std::abs(v(j));
                if (w == 0.0) continue;
                e.constant += w * r.eps_b(j);
                for (Index k = 0; k < n_; ++k) {
                  if (r.eps_a(j, k) != 0.0) e.add(abs_var(k), w * r.eps_a(j, k));
                }
              }
            },
            [&](const U::Vertices& vs) {
              const Index t = new_var();
              for (const auto& p : vs.points) {
                AffineExpr row;
                const Vector a = p.dA.transpose() * v;
                for (Index k = 0; k < n_; ++k) row.add(k, a(k));
                row.add(t, -1.0);
                row.constant = -v.dot(p.db);
                add_row(row, 0.0);
              }
              e.add(t, scale);
            },
            [&](const U::BVertices& vs) {
              double best = -std::numeric_limits<double>::infinity();
              for (const auto& p : vs.points) best = std::max(best, -v.dot(p));
              e.constant += scale * best;
            },
            [&](const U::Scaled& s) { e.add(worst_case(s.inner, v, scale * s.lambda), 1.0); },
            [&](const U::Translated& tr) {
              const Vector a = tr.shift.dA.transpose() * v;
              for (Index k = 0; k < n_; ++k) e.add(k, scale * a(k));
              e.constant -= scale * v.dot(tr.shift.db);
              e.add(worst_case(tr.inner, v, scale), 1.0);
            },
            [&](const U::Sum& s) {
              e.add(worst_case(s.left, v, scale), 1.0);
              e.add(worst_case(s.right, v, scale), 1.0);
            },
        },
        set.node());
    return e;
  }

  LpProblem finish(const Vector& c) const {
    LpProblem lp;
    lp.c = Vector::Zero(num_vars_);
    lp.c.head(c.size()) = c;
    lp.G = Matrix::Zero(static_cast<Index>(rows_.size()), num_vars_);
    lp.h.resize(static_cast<Index>(rows_.size()));
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      for (const auto& [var, a] : rows_[r].coef) lp.G(static_cast<Index>(r), var) = a;
      lp.h(static_cast<Index>(r)) = rows_[r].rhs;
    }
    return lp;
  }

 private:
  struct Row {
    std::map<Index, double> coef;
    double rhs;
  };
  Index n_;
  Index num_vars_;
  std::vector<Index> abs_vars_;
  std::vector<Row> rows_;
};

// Peels Scaled/Translated wrappers off a vertex leaf. On success returns the
// leaf's explicit points after applying the wrappers.
inline std::optional<std::vector<Perturbation>> explicit_vertices(const UncertaintySet& set) {
  using U = UncertaintySet;
  if (const auto* v = std::get_if<U::Vertices>(&set.node())) return v->points;
  if (const auto* v = std::get_if<U::BVertices>(&set.node())) {
    std::vector<Perturbation> pts;
    for (const auto& p : v->points) pts.push_back({Matrix::Zero(p.size(), v->cols), p});
    return pts;
  }
  if (const auto* s = std::get_if<U::Scaled>(&set.node())) {
    auto pts = explicit_vertices(s->inner);
    if (pts) {
      for (auto& p : *pts) {
        p.dA *= s->lambda;
        p.db *= s->lambda;
      }
    }
    return pts;
  }
  if (const auto* t = std::get_if<U::Translated>(&set.node())) {
    auto pts = explicit_vertices(t->inner);
    if (pts) {
      for (auto& p : *pts) {
        p.dA += t->shift.dA;
        p.db += t->shift.db;
      }
    }
    return pts;
  }
  return std::nullopt;
}

}  // namespace detail

/// Exact robust counterpart of inst as an LP. For each cone row v of block i:
///   v^T (A_i x - b_i) + eps * max_{U_i} v^T (dA x - db) <= 0.
/// Vertex sets give one row per vertex, rectangular sets lift |x| with
/// auxiliary variables. Second-order cone blocks are rejected.
inline RobustLp robust_counterpart(const RobustInstance& inst) {
  const ConicProgram& p = inst.base;
  p.validate();
  if (!std::isfinite(inst.epsilon) || inst.epsilon < 0.0) {
    throw std::invalid_argument("robust_counterpart: epsilon must be finite and >= 0");
  }
  const Index n = p.num_vars();
  detail::CounterpartBuilder builder(n);
  for (std::size_t i = 0; i < p.blocks.size(); ++i) {
    const Block& blk = p.blocks[i];
    if (blk.cone.kind() == ConeKind::SecondOrder) {
      throw UnsupportedCombination("robust_counterpart: block " + std::to_string(i) +
                                   " is a second-order cone; the exact robust SOC counterpart " +
                                   "is not supported");
    }
    const Matrix V = linear_normals(blk.cone);
    const auto verts = inst.epsilon > 0.0 ? detail::explicit_vertices(p.uncertainty[i])
                                          : std::optional<std::vector<Perturbation>>{};
    for (Index r = 0; r < V.rows(); ++r) {
      const Vector v = V.row(r).transpose();
      const Vector a = blk.A.transpose() * v;
      const double rhs = v.dot(blk.b);
      if (inst.epsilon == 0.0) {
        detail::AffineExpr row;
        for (Index k = 0; k < n; ++k) row.add(k, a(k));
        builder.add_row(row, rhs);
        continue;
      }
      if (verts) {
        // (A + eps dA^(p)) x <= b + eps db^(p), projected on v.
        std::vector<std::pair<Vector, double>> seen;
        for (const auto& pt : *verts) {
          const Vector ra = a + inst.epsilon * (pt.dA.transpose() * v);
          const double rb = rhs + inst.epsilon * v.dot(pt.db);
          const bool dup = std::any_of(seen.begin(), seen.end(), [&](const auto& s) {
            return s.first == ra && s.second == rb;
          });
          if (dup) continue;
          seen.emplace_back(ra, rb);
          detail::AffineExpr row;
          for (Index k = 0; k < n; ++k) row.add(k, ra(k));
          builder.add_row(row, rb);
        }
        continue;
      }
      detail::AffineExpr row = builder.worst_case(p.uncertainty[i], v, inst.epsilon);
      for (Index k = 0; k < n; ++k) row.add(k, a(k));
      builder.add_row(row, rhs);
    }
  }
  return {builder.finish(p.c), n};
}

struct SweepTolerances {
  double dir = 1e-4;    // relative: tol_dir = dir * (1 + ||gamma||)
  double slope = 1e-6;  // relative: tol_slope = slope * (1 + |vtilde|)
  Tolerances solver;
};

inline const std::vector<double>& default_eps_ladder() {
  static const std::vector<double> ladder{1e-1, 3e-2, 1e-2, 3e-3, 1e-3, 3e-4, 1e-4};
  return ladder;
}

struct SweepRow {
  double eps = 0.0;
  LpStatus status = LpStatus::NumericalFailure;
  Vector x;
  double value = std::numeric_limits<double>::quiet_NaN();
  double residual = std::numeric_limits<double>::quiet_NaN();  // v_eps - (v + eps * vtilde)
  Vector gamma_hat;                                            // (x_eps - xbar) / eps
  double dir_err = std::numeric_limits<double>::quiet_NaN();
};

enum class Verdict { Pass, Fail, Inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct SweepReport {
  std::vector<SweepRow> rows;  // in decreasing eps order
  Vector xbar;
  double vbar = 0.0;
  Vector gammabar;
  double vtilde = 0.0;
  bool unique = true;
  double slope = std::numeric_limits<double>::quiet_NaN();
  double secant_slope = std::numeric_limits<double>::quiet_NaN();
  double curvature = std::numeric_limits<double>::quiet_NaN();
  double tail_dir_err = std::numeric_limits<double>::quiet_NaN();  // at eps_min
  std::optional<double> linearity_onset;
  double tol_dir = 0.0;
  double tol_slope = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  std::string reason;
};

/// Solves the robust counterpart on each eps of the ladder and compares the
/// first-order prediction v + eps*vtilde, xbar + eps*gamma with the exact
/// robust optima.
///
/// slope is the intercept of a least-squares line through (eps, (v_eps - v)/eps)
/// over the three smallest Optimal eps, i.e. the first-order coefficient with
/// the O(eps) curvature term removed.
inline SweepReport sweep(const ConicProgram& p, const Vector& xbar, const TangentialProblem& tp,
                         const TangentialSolution& ts, std::vector<double> epsilons,
                         const SweepTolerances& tol = {}) {
  SweepReport rep;
  rep.xbar = xbar;
  rep.vbar = p.c.dot(xbar) + p.d;
  rep.gammabar = ts.gamma;
  rep.vtilde = ts.vtilde;
  rep.unique = ts.unique;
  rep.tol_dir = tol.dir * (1.0 + (ts.gamma.size() ? ts.gamma.norm() : 0.0));
  rep.tol_slope = tol.slope * (1.0 + std::abs(ts.vtilde));
  if (ts.status != LpStatus::Optimal) {
    rep.verdict = Verdict::Inconclusive;
    rep.reason = std::string("tangential problem is ") + to_string(ts.status);
    return rep;
  }

  std::sort(epsilons.begin(), epsilons.end(), std::greater<>());
  epsilons.erase(std::unique(epsilons.begin(), epsilons.end()), epsilons.end());
  LpOptions lo;
  lo.tol_feas = tol.solver.feas;
  lo.pivot_tol = tol.solver.pivot;
  for (double eps : epsilons) {
    if (!(eps > 0.0) || !std::isfinite(eps)) {
      throw std::invalid_argument("sweep: every epsilon must be finite and > 0");
    }
    SweepRow row;
    row.eps = eps;
    const RobustLp rl = robust_counterpart({p, eps});
    const LpSolution s = solve_lp(rl.lp, lo);
    row.status = s.status;
    if (s.status == LpStatus::Optimal) {
      row.x = s.x.head(rl.num_original);
      row.value = p.c.dot(row.x) + p.d;
      row.residual = row.value - (rep.vbar + eps * rep.vtilde);
      row.gamma_hat = (row.x - xbar) / eps;
      row.dir_err = (row.gamma_hat - ts.gamma).norm();
    }
    rep.rows.push_back(std::move(row));
  }

  std::vector<const SweepRow*> ok;
  for (const auto& r : rep.rows) {
    if (r.status == LpStatus::Optimal) ok.push_back(&r);
  }
  if (ok.size() < 3) {
    rep.verdict = Verdict::Inconclusive;
    rep.reason = "fewer than three Optimal robust solves";
    return rep;
  }
  // smallest three eps (rows are in decreasing order)
  std::vector<const SweepRow*> tail(ok.end() - 3, ok.end());
  double se = 0, sq = 0, see = 0, seq = 0;
  for (const auto* r : tail) {
    const double q = (r->value - rep.vbar) / r->eps;
    se += r->eps;
    sq += q;
    see += r->eps * r->eps;
    seq += r->eps * q;
  }
  const double k = static_cast<double>(tail.size());
  const double denom = k * see - se * se;
  rep.curvature = denom != 0.0 ? (k * seq - se * sq) / denom : 0.0;
  rep.slope = (sq - rep.curvature * se) / k;
  const SweepRow& last = *tail.back();
  rep.secant_slope = (last.value - rep.vbar) / last.eps;
  rep.tail_dir_err = last.dir_err;

  // Largest eps below which every row tracks v + eps*vtilde to tol_slope*eps.
  for (auto it = rep.rows.rbegin(); it != rep.rows.rend(); ++it) {
    if (it->status != LpStatus::Optimal || std::abs(it->residual) > rep.tol_slope * it->eps) break;
    rep.linearity_onset = it->eps;
  }

  const bool slope_ok = std::abs(rep.slope - rep.vtilde) <= rep.tol_slope;
  if (rep.unique) {
    const bool dir_ok = last.dir_err <= rep.tol_dir;
    rep.verdict = slope_ok && dir_ok ? Verdict::Pass : Verdict::Fail;
    if (!dir_ok) rep.reason = "direction error " + std::to_string(last.dir_err) + " > tol_dir";
    if (!slope_ok) rep.reason += (rep.reason.empty() ? "" : "; ") + std::string("slope mismatch");
  } else {
    // Cluster-point containment: gamma_hat must be (nearly) feasible and
    // optimal for the tangential problem.
    const LpProblem lp = tp.halfspace_lp();
    double viol = 0.0;
    if (lp.G.rows() > 0) viol = (lp.G * last.gamma_hat - lp.h).maxCoeff();
    for (const auto& sc : tp.selfcone) {
      for (const auto& u : sc.vertices) {
        viol = std::max(viol, cone_violation(sc.cone, sc.A * last.gamma_hat + u));
      }
    }
    const bool feasible = viol <= rep.tol_dir;
    const bool optimal = p.c.dot(last.gamma_hat) <= rep.vtilde + rep.tol_slope + rep.tol_dir;
    rep.verdict = feasible && optimal && slope_ok ? Verdict::Pass : Verdict::Fail;
    if (!feasible) rep.reason = "gamma_hat violates the tangential constraints by " + std::to_string(viol);
    if (!optimal) rep.reason += (rep.reason.empty() ? "" : "; ") + std::string("gamma_hat is not optimal");
    if (!slope_ok) rep.reason += (rep.reason.empty() ? "" : "; ") + std::string("slope mismatch");
  }
  return rep;
}

}  // namespace robustfo
