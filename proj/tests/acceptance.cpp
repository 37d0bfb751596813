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

// Acceptance suite. Prints one PASS/FAIL line per criterion; exits nonzero
// if any criterion fails.

#include "cli.hpp"
#include "support/generators.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

using namespace robustfo;
using namespace robustfo::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

// Every Optimal tangential solve made by criteria 1-4, for criterion 7.
struct Solved {
  std::string label;
  TangentialProblem tp;
  TangentialSolution sol;
};
std::vector<Solved> g_solved;

TangentialSolution solve_and_record(const std::string& label, const ConicProgram& p, const Vector& xbar,
                                    const BlockSets& sets, const TangentialOptions& opt = {}) {
  const ConicProgram q = with_uncertainty(p, sets);
  TangentialProblem tp = build_tangential(q, xbar, opt.tol);
  TangentialSolution sol = solve_tangential(tp, opt);
  if (sol.status == LpStatus::Optimal) g_solved.push_back({label, tp, sol});
  return sol;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// --- 1 -----------------------------------------------------------------------

Outcome criterion1() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const ConicProgram p = golden::degen_program();
  const NominalSolution nom = solve_nominal(p);
  if (nom.status != LpStatus::Optimal || nom.x.norm() > 1e-9) o.fail("nominal optimum is not (0,0)");
  const Vector xbar = Vector::Zero(2);

  const auto s1 = solve_and_record("degen S1", p, xbar, golden::degen_s1());
  const auto s2 = solve_and_record("degen S2", p, xbar, golden::degen_s2());
  const auto s12 = solve_and_record("degen S1+S2", p, xbar, sum_sets(golden::degen_s1(), golden::degen_s2()));
  for (const auto* s : {&s1, &s2, &s12}) {
    if (s->status != LpStatus::Optimal || !near(s->vtilde, 2.0, 1e-9)) o.fail("v != 2: " + fmt(s->vtilde));
  }
  if (s1.gamma.size() != 2 || !near(s1.gamma(0), -2.0, 1e-9) || !near(s1.gamma(1), 2.0, 1e-9)) {
    o.fail("gamma(S1) != (-2, 2)");
  }
  const AdditionReport rep = addition_report(p, xbar, golden::degen_s1(), golden::degen_s2());
  if (!near(rep.gap, 2.0, 1e-9)) o.fail("gap " + fmt(rep.gap) + " != 2");

  // Oracle: the tangential LP written out by hand, solved by vertex enumeration.
  Matrix G(3, 2);
  G << -1, -1, 1, -1, 0.5, -1;
  const Vector c = p.c;
  auto oracle = [&](double h2, double h3) {
    Vector h(3);
    h << 0.0, -h2, -h3;
    return vertex_enumeration(c, G, h);
  };
  if (!near(oracle(4, 0), 2.0, 1e-12) || !near(oracle(0, 3), 2.0, 1e-12) || !near(oracle(4, 3), 2.0, 1e-12)) {
    o.fail("hand-built oracle disagrees");
  }

  std::ostringstream out, err;
  const char* argv[] = {"robustfo", "examples", "degen"};
  if (cli::run(3, argv, out, err) != 0) o.fail("`examples degen` did not pass: " + err.str());

  const double t = seconds_since(t0);
  if (t >= 1.0) o.fail("runtime " + fmt(t) + " s >= 1 s");
  if (o.pass) o.detail = "v = (2, 2, 2), gamma = (-2, 2), gap = 2, " + fmt(t) + " s";
  return o;
}

// --- 2 -----------------------------------------------------------------------

Outcome criterion2() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const double a = 1.0, b = 2.0, delta = 0.5;
  const ConicProgram p = golden::square_eg_program();
  const Vector xbar = Vector::Zero(3);
  const NominalSolution nom = solve_nominal(p);
  if (nom.status != LpStatus::Optimal || nom.x.norm() > 1e-9) o.fail("nominal optimum is not 0");
  const auto S1 = golden::square_eg_s1(a, b, delta), S2 = golden::square_eg_s2(a, b, delta);
  const auto v1 = solve_and_record("square S1", p, xbar, S1);
  const auto v2 = solve_and_record("square S2", p, xbar, S2);
  const auto v12 = solve_and_record("square S1+S2", p, xbar, sum_sets(S1, S2));
  if (!near(v1.vtilde, 1.25, 1e-9) || !near(v2.vtilde, 1.25, 1e-9) || !near(v12.vtilde, 2.0, 1e-9)) {
    o.fail("values (" + fmt(v1.vtilde) + ", " + fmt(v2.vtilde) + ", " + fmt(v12.vtilde) + ") != (1.25, 1.25, 2)");
  }

  // Oracle for the polyhedral square: the tangential LP rows, hand-built.
  {
    const Matrix V = golden::square_cone_rows();
    auto oracle = [&](double r1, double r2, double r3) {
      Vector h(4);
      for (Index i = 0; i < 4; ++i) h(i) = -(std::abs(V(i, 0)) * r1 + std::abs(V(i, 1)) * r2 + std::abs(V(i, 2)) * r3);
      return vertex_enumeration(p.c, V, h);
    };
    if (!near(oracle(a / 2, b / 2, delta / 2), 1.25, 1e-12) ||
        !near(oracle((a + b) / 2, (a + b) / 2, delta), 2.0, 1e-12)) {
      o.fail("hand-built square oracle disagrees");
    }
  }

  const AdditionReport soc = golden::square_eg_soc_variant(a, b, delta);
  if (!(soc.gap > 1e-6)) o.fail("SOC gap " + fmt(soc.gap) + " <= 1e-6");
  const double b1 = soc_square_brute(a / 2, b / 2, delta / 2);
  const double b12 = soc_square_brute((a + b) / 2, (a + b) / 2, delta);
  if (!near(soc.v_left, b1, 1e-7) || !near(soc.v_right, b1, 1e-7) || !near(soc.v_sum, b12, 1e-7)) {
    o.fail("SOC values disagree with the brute-force oracle");
  }
  const double t = seconds_since(t0);
  if (t >= 2.0) o.fail("runtime " + fmt(t) + " s >= 2 s");
  if (o.pass) {
    o.detail = "(1.25, 1.25, 2), SOC gap " + fmt(soc.gap) + " (oracle " + fmt(2 * b1 - b12) + "), " + fmt(t) + " s";
  }
  return o;
}

// --- 3 and 4 -----------------------------------------------------------------

struct Corpus {
  int instances = 0;
  int slope_ok = 0;
  int dir_ok = 0;
  int closed_ok = 0;
  int nondegenerate = 0;
  int oracle_ok = 0;
  double worst_slope = 0, worst_dir = 0, worst_closed = 0;
  double seconds = 0;
  std::string first_issue;
};

Corpus run_corpus() {
  Corpus c;
  Rng rng(20260316);
  const auto t0 = std::chrono::steady_clock::now();
  for (int trial = 0; trial < 50; ++trial) {
    ++c.instances;
    LpInstance inst = orthant_instance(rng, ActiveMode::Nondegenerate, 2, 5, 10);
    const BlockSets sets = rectangular_sets(rng, inst.program, 0.1, 1.0);
    const ConicProgram q = with_uncertainty(inst.program, sets);
    const auto ts = solve_and_record("corpus " + std::to_string(trial), inst.program, inst.xbar, sets);
    const TangentialProblem tp = build_tangential(q, inst.xbar);
    auto note = [&](const std::string& s) {
      if (c.first_issue.empty()) c.first_issue = "instance " + std::to_string(trial) + ": " + s;
    };
    if (ts.status != LpStatus::Optimal) {
      note("tangential problem not optimal");
      continue;
    }

    // Oracle: gamma = A_B^{-1} w with w_j = -(sum_k epsA_jk |xbar_k| + epsB_j).
    const Index n = inst.xbar.size();
    Matrix AB(n, n), SB(n, n);
    Vector w(n), dB(n), bB(n);
    for (Index i = 0; i < n; ++i) {
      const Index r = inst.active[static_cast<std::size_t>(i)];
      const auto& rect = std::get<UncertaintySet::Rectangular>(sets[static_cast<std::size_t>(inst.block_of[r])].node());
      const Index j = inst.local[static_cast<std::size_t>(r)];
      AB.row(i) = inst.A.row(r);
      bB(i) = inst.b(r);
      dB(i) = rect.eps_b(j);
      SB.row(i) = rect.eps_a.row(j).cwiseProduct(inst.xbar.cwiseSign().transpose());
      w(i) = -(rect.eps_a.row(j).dot(inst.xbar.cwiseAbs()) + rect.eps_b(j));
    }
    const Vector g_oracle = AB.partialPivLu().solve(w);

    const Nondegeneracy nd = check_nondegenerate(tp);
    if (nd.holds) ++c.nondegenerate;
    else note("nondegeneracy check failed: " + nd.diagnosis);
    const auto cf = closed_form_solution(tp);
    if (cf) {
      const double e = (*cf - ts.gamma).cwiseAbs().maxCoeff();
      c.worst_closed = std::max(c.worst_closed, e);
      if (e <= 1e-9 && (g_oracle - ts.gamma).cwiseAbs().maxCoeff() <= 1e-9) ++c.closed_ok;
      else note("closed form differs by " + fmt(e));
    } else {
      note("closed form unavailable");
    }

    const SweepReport rep = sweep(q, inst.xbar, tp, ts, default_eps_ladder());
    const double ds = std::abs(rep.slope - ts.vtilde);
    const double tol_slope = 1e-6 * (1.0 + std::abs(ts.vtilde));
    const double tol_dir = 1e-4 * (1.0 + ts.gamma.norm());
    c.worst_slope = std::max(c.worst_slope, ds / tol_slope);
    const SweepRow& last = rep.rows.back();
    if (last.status != LpStatus::Optimal) {
      note("robust solve at eps_min not optimal");
      continue;
    }
    const double dd = ((last.x - inst.xbar) / last.eps - ts.gamma).norm();
    c.worst_dir = std::max(c.worst_dir, dd / tol_dir);
    if (ds <= tol_slope) ++c.slope_ok;
    else note("slope error " + fmt(ds));
    if (dd <= tol_dir) ++c.dir_ok;
    else note("direction error " + fmt(dd));

    // Oracle: the robust optimum keeps the active set, so
    // (A_B + eps S_B) x = b_B - eps delta_B.
    const Vector x_oracle = (AB + last.eps * SB).partialPivLu().solve(bB - last.eps * dB);
    if ((x_oracle - last.x).cwiseAbs().maxCoeff() <= 1e-9 * (1.0 + x_oracle.norm())) ++c.oracle_ok;
    else note("robust optimum differs from the active-set oracle");
  }
  c.seconds = seconds_since(t0);
  return c;
}

Outcome criterion3(const Corpus& c) {
  Outcome o;
  if (c.slope_ok != c.instances || c.dir_ok != c.instances) {
    o.fail(std::to_string(c.slope_ok) + "/" + std::to_string(c.instances) + " slope, " + std::to_string(c.dir_ok) +
           "/" + std::to_string(c.instances) + " direction; " + c.first_issue);
  }
  if (c.oracle_ok != c.instances) o.fail("robust optima disagree with the oracle; " + c.first_issue);
  if (c.seconds >= 30.0) o.fail("runtime " + fmt(c.seconds) + " s >= 30 s");
  if (o.pass) {
    o.detail = "50/50 instances; worst slope err " + fmt(c.worst_slope) + " x tol, worst dir err " +
               fmt(c.worst_dir) + " x tol, " + fmt(c.seconds) + " s";
  }
  return o;
}

Outcome criterion4(const Corpus& c) {
  Outcome o;
  if (c.nondegenerate == 0 || c.closed_ok != c.nondegenerate) {
    o.fail(std::to_string(c.closed_ok) + "/" + std::to_string(c.nondegenerate) + " match; " + c.first_issue);
  }
  if (o.pass) {
    o.detail = std::to_string(c.closed_ok) + "/" + std::to_string(c.nondegenerate) +
               " nondegenerate instances, worst |closed - simplex| " + fmt(c.worst_closed);
  }
  return o;
}

// --- 5 -----------------------------------------------------------------------

Outcome criterion5() {
  Outcome o;
  Rng rng(77001);
  int hom = 0, trans = 0, mono = 0, sub = 0, eq = 0;
  double worst_hom = 0, worst_trans = 0, worst_mono = 0, worst_sub = 0, worst_eq = 0;
  auto mode = [&] {
    const int r = uniform_int(rng, 0, 2);
    return r == 0 ? ActiveMode::Nondegenerate : r == 1 ? ActiveMode::Independent : ActiveMode::Degenerate;
  };
  const int trials = 500;
  for (int t = 0; t < trials; ++t) {
    // homogeneity
    {
      LpInstance inst = orthant_instance(rng, mode(), 2, 4, 7);
      const BlockSets S = random_sets(rng, inst.program);
      const double lambda = t < 30 ? std::array<double, 3>{0.0, 0.5, 2.0}[t % 3] : uniform(rng, 0.0, 3.0);
      const double v = v_of(inst.program, inst.xbar, S);
      const double vl = v_of(inst.program, inst.xbar, scale_sets(lambda, S));
      const double e = std::abs(vl - lambda * v);
      worst_hom = std::max(worst_hom, e);
      if (e <= 1e-9) ++hom;
    }
    // translation: v(S + s) = v(S) + c^T g with A_B g = -L(s)_B
    {
      LpInstance inst = orthant_instance(rng, t % 2 ? ActiveMode::Nondegenerate : ActiveMode::Independent, 2, 4, 7);
      const BlockSets S = random_sets(rng, inst.program);
      std::vector<Perturbation> shifts;
      for (const auto& blk : inst.program.blocks) {
        shifts.push_back(random_perturbation(rng, blk.A.rows(), blk.A.cols(), 0.3, 1.0));
      }
      const Index k = static_cast<Index>(inst.active.size());
      Matrix AB(k, inst.xbar.size());
      Vector rhs(k);
      for (Index i = 0; i < k; ++i) {
        const Index r = inst.active[static_cast<std::size_t>(i)];
        const auto& sh = shifts[static_cast<std::size_t>(inst.block_of[r])];
        const Index j = inst.local[static_cast<std::size_t>(r)];
        AB.row(i) = inst.A.row(r);
        rhs(i) = -(sh.dA.row(j).dot(inst.xbar) - sh.db(j));
      }
      const Vector g = AB.colPivHouseholderQr().solve(rhs);
      const double v = v_of(inst.program, inst.xbar, S);
      const double vt = v_of(inst.program, inst.xbar, translate_sets(shifts, S));
      const double e = std::abs(vt - (v + inst.program.c.dot(g)));
      worst_trans = std::max(worst_trans, e);
      if (e <= 1e-9) ++trans;
    }
    // monotonicity: S subset S' = S + T with 0 in T, or a vertex superset
    {
      LpInstance inst = orthant_instance(rng, mode(), 2, 4, 7);
      const Index n = inst.xbar.size();
      BlockSets S, Sp;
      for (const auto& blk : inst.program.blocks) {
        const Index k = blk.A.rows();
        if (rng() & 1) {
          const UncertaintySet s = random_set(rng, k, n);
          Matrix ea(k, n);
          Vector eb(k);
          for (Index i = 0; i < k; ++i) {
            for (Index j = 0; j < n; ++j) ea(i, j) = uniform(rng, 0.0, 0.2);
            eb(i) = uniform(rng, 0.0, 0.5);
          }
          S.push_back(s);
          Sp.push_back(UncertaintySet::minkowski_sum(s, UncertaintySet::rectangular(ea, eb)));
        } else {
          std::vector<Perturbation> pts;
          for (int i = uniform_int(rng, 1, 4); i > 0; --i) pts.push_back(random_perturbation(rng, k, n));
          std::vector<Perturbation> more = pts;
          for (int i = uniform_int(rng, 1, 3); i > 0; --i) more.push_back(random_perturbation(rng, k, n));
          S.push_back(UncertaintySet::vertices(pts));
          Sp.push_back(UncertaintySet::vertices(more));
        }
      }
      const LMap L(inst.xbar);
      bool contained = true;
      for (std::size_t i = 0; i < S.size(); ++i) contained = contained && contains_by_support(Sp[i], S[i], L, 64, t);
      if (!contained) o.fail("constructed superset failed the support-dominance check");
      const double e = v_of(inst.program, inst.xbar, S) - v_of(inst.program, inst.xbar, Sp);
      worst_mono = std::max(worst_mono, e);
      if (e <= 1e-9) ++mono;
    }
    // subadditivity
    {
      LpInstance inst = orthant_instance(rng, mode(), 2, 4, 7);
      const BlockSets S1 = random_sets(rng, inst.program), S2 = random_sets(rng, inst.program);
      const double l1 = uniform(rng, 0.0, 2.0), l2 = uniform(rng, 0.0, 2.0);
      const AdditionReport rep = addition_report(inst.program, inst.xbar, S1, S2, l1, l2);
      worst_sub = std::min(worst_sub, rep.gap);
      if (rep.gap >= -1e-9) ++sub;
    }
  }
  for (int t = 0; t < 100; ++t) {
    LpInstance inst = orthant_instance(rng, ActiveMode::Nondegenerate, 2, 4, 7);
    const BlockSets S1 = random_sets(rng, inst.program), S2 = random_sets(rng, inst.program);
    const AdditionReport rep = addition_report(inst.program, inst.xbar, S1, S2);
    worst_eq = std::max(worst_eq, std::abs(rep.gap));
    if (rep.nondegenerate && rep.gap <= 1e-9) ++eq;
  }
  auto count = [](int k, int of) { return std::to_string(k) + "/" + std::to_string(of); };
  if (hom != trials) o.fail("homogeneity " + count(hom, trials) + ", worst " + fmt(worst_hom));
  if (trans != trials) o.fail("translation " + count(trans, trials) + ", worst " + fmt(worst_trans));
  if (mono != trials) o.fail("monotonicity " + count(mono, trials) + ", worst " + fmt(worst_mono));
  if (sub != trials) o.fail("subadditivity " + count(sub, trials) + ", worst " + fmt(worst_sub));
  if (eq != 100) o.fail("equality " + count(eq, 100) + ", worst " + fmt(worst_eq));
  if (o.pass) {
    o.detail = "homogeneity/translation/monotonicity/subadditivity 500/500 each, equality 100/100; worst errors " +
               fmt(worst_hom) + ", " + fmt(worst_trans) + ", " + fmt(worst_mono) + ", " + fmt(worst_sub) + ", " +
               fmt(worst_eq);
  }
  return o;
}

// --- 6 -----------------------------------------------------------------------

Outcome criterion6() {
  Outcome o;
  Rng rng(6006);
  int ok = 0;
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    const Index k = uniform_int(rng, 3, 6), n = uniform_int(rng, 2, 4);
    const Matrix A = gaussian(rng, k, n);
    const Vector xbar = gaussian_vec(rng, n);
    Vector tail = gaussian_vec(rng, k - 1);
    if (tail.norm() < 0.1) tail *= 0.1 / tail.norm();
    Vector z(k);
    z << tail.norm(), tail;
    Vector Rz = z;
    Rz(0) = -Rz(0);
    const Vector grad = A.transpose() * Rz;
    if (grad.norm() < 1e-3) {
      --t;
      continue;
    }
    ConicProgram p;
    p.c = -uniform(rng, 0.5, 2.0) * grad;
    p.blocks.push_back({A, A * xbar - z, Cone::second_order(k)});
    std::vector<Perturbation> pts;
    for (int i = uniform_int(rng, 2, 5); i > 0; --i) pts.push_back(random_perturbation(rng, k, n));
    p.uncertainty.push_back(UncertaintySet::vertices(pts));

    const TangentialProblem tp = build_tangential(p, xbar);
    const TangentialSolution ts = solve_tangential(tp);
    if (tp.roles.front() != BlockRole::Halfspaces || ts.status != LpStatus::Optimal) {
      o.fail("trial " + std::to_string(t) + ": boundary point not reduced to a solvable halfspace row");
      continue;
    }
    // Direct membership: w in T_Q(z) iff the directional derivative of
    // ||w_tail|| - w_0 at z along w is <= 0, and z + s w stays within
    // O(s^2) of Q.
    bool all = true;
    for (const auto& pt : pts) {
      const Vector w = A * ts.gamma + (pt.dA * xbar - pt.db);
      const double dd = tail.dot(w.tail(k - 1)) / tail.norm() - w(0);
      worst = std::max(worst, dd);
      const double s = 1e-6;
      const Vector zs = z + s * w;
      const double secant = std::max(0.0, zs.tail(k - 1).norm() - zs(0)) / s;
      const double bound = 1e-8 + s * w.squaredNorm() / tail.norm();
      all = all && dd <= 1e-8 && secant <= bound;
    }
    if (all) ++ok;
  }
  if (ok != 100) o.fail(std::to_string(ok) + "/100 boundary points verified");
  if (o.pass) o.detail = "100/100 boundary points, worst directional derivative " + fmt(worst);
  return o;
}

// --- 7 -----------------------------------------------------------------------

Outcome criterion7() {
  Outcome o;
  int ok = 0;
  double worst = 0;
  for (const auto& s : g_solved) {
    const Certificate cert = check_certificate(s.tp, s.sol);
    worst = std::max(worst, cert.residual);
    if (cert.certified && cert.residual <= 1e-7) ++ok;
    else o.fail(s.label + ": residual " + fmt(cert.residual));
  }
  if (g_solved.empty()) o.fail("no optimal solves recorded");
  if (o.pass) o.detail = std::to_string(ok) + "/" + std::to_string(g_solved.size()) + " certified, worst residual " + fmt(worst);
  return o;
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, Outcome>> results;
  auto guarded = [](auto fn) {
    try {
      return fn();
    } catch (const std::exception& e) {
      Outcome o;
      o.fail(std::string("exception: ") + e.what());
      return o;
    }
  };
  results.emplace_back("degen golden values", guarded(criterion1));
  results.emplace_back("square golden values and SOC gap", guarded(criterion2));
  Corpus corpus;
  try {
    corpus = run_corpus();
  } catch (const std::exception& e) {
    corpus.first_issue = std::string("exception: ") + e.what();
  }
  results.emplace_back("first-order expansion on random orthant instances", criterion3(corpus));
  results.emplace_back("closed form matches simplex", criterion4(corpus));
  results.emplace_back("set-algebra properties", guarded(criterion5));
  results.emplace_back("SOC boundary halfspace reduction", guarded(criterion6));
  results.emplace_back("optimality certificates", guarded(criterion7));

  bool all = true;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& [name, o] = results[i];
    all = all && o.pass;
    std::printf("%s criterion %zu: %s (%s)\n", o.pass ? "PASS" : "FAIL", i + 1, name.c_str(), o.detail.c_str());
  }
  return all ? 0 : 1;
}
