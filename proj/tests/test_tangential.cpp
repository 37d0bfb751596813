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

#include "support/generators.hpp"

#include <gtest/gtest.h>

using namespace robustfo;
using namespace robustfo::testing;

namespace {

ConicProgram one_block(const Matrix& A, const Vector& b, const Vector& c) {
  ConicProgram p;
  p.c = c;
  p.blocks.push_back({A, b, Cone::orthant(A.rows())});
  p.uncertainty.push_back(UncertaintySet::zero(A.rows(), A.cols()));
  return p;
}

}  // namespace

TEST(Tangential, DegenerateExample) {
  const ConicProgram p = with_uncertainty(golden::degen_program(), golden::degen_s1());
  const TangentialProblem tp = build_tangential(p, Vector::Zero(2));
  ASSERT_EQ(tp.rows.size(), 3u);
  EXPECT_DOUBLE_EQ(tp.rows[1].threshold, -4.0);
  EXPECT_DOUBLE_EQ(tp.rows[0].threshold, 0.0);
  const TangentialSolution s = solve_tangential(tp);
  ASSERT_EQ(s.status, LpStatus::Optimal);
  EXPECT_NEAR(s.vtilde, 2.0, 1e-12);
  EXPECT_NEAR(s.gamma(0), -2.0, 1e-12);
  EXPECT_NEAR(s.gamma(1), 2.0, 1e-12);
  EXPECT_TRUE(s.unique);
  EXPECT_TRUE(s.certificate.certified);
  EXPECT_TRUE(s.cq_ok);
  EXPECT_EQ(s.active.size(), 2u);
}

TEST(Tangential, SocWalkthrough) {
  const ConicProgram p = golden::socp_walkthrough_program();
  const NominalSolution nom = solve_nominal(p);
  ASSERT_EQ(nom.status, LpStatus::Optimal);
  EXPECT_NEAR(nom.x(0), 0.6, 1e-8);
  EXPECT_NEAR(nom.x(1), 0.8, 1e-8);
  const TangentialProblem tp = build_tangential(p, nom.x);
  EXPECT_EQ(tp.roles[0], BlockRole::Halfspaces);
  EXPECT_EQ(tp.roles[1], BlockRole::Halfspaces);
  const TangentialSolution s = solve_tangential(tp);
  ASSERT_EQ(s.status, LpStatus::Optimal);
  EXPECT_NEAR(s.gamma(0), -0.2, 1e-7);
  EXPECT_NEAR(s.gamma(1), -0.1, 1e-7);
  EXPECT_NEAR(s.vtilde, 0.3, 1e-7);
  EXPECT_TRUE(s.certificate.certified);
}

TEST(Tangential, InactiveBlocksAreDropped) {
  Matrix A(1, 1);
  A << 1;
  ConicProgram p = one_block(A, Vector::Ones(1), Vector::Ones(1));
  p.blocks.push_back({-A, Vector::Zero(1), Cone::orthant(1)});
  p.uncertainty.push_back(UncertaintySet::zero(1, 1));
  const TangentialProblem tp = build_tangential(p, Vector::Zero(1));
  EXPECT_EQ(tp.roles[0], BlockRole::Dropped);
  EXPECT_EQ(tp.roles[1], BlockRole::Halfspaces);
  EXPECT_EQ(tp.rows.size(), 1u);
}

TEST(Tangential, InfeasibleNominalPointThrows) {
  const ConicProgram p = golden::degen_program();
  Vector x(2);
  x << 0, -1;
  EXPECT_THROW(build_tangential(p, x), InfeasiblePoint);
  EXPECT_THROW(first_order_problem_lp(p, x), InfeasiblePoint);
}

TEST(Tangential, LpShortcutAgreesWithGeneralBuilder) {
  Rng rng(51);
  for (int trial = 0; trial < 100; ++trial) {
    LpInstance inst = orthant_instance(rng, static_cast<ActiveMode>(trial % 3), 2, 4, 7);
    const ConicProgram p = with_uncertainty(inst.program, random_sets(rng, inst.program));
    const TangentialSolution a = solve_tangential(build_tangential(p, inst.xbar));
    const TangentialSolution b = solve_tangential(first_order_problem_lp(p, inst.xbar));
    ASSERT_EQ(a.status, LpStatus::Optimal);
    ASSERT_EQ(b.status, LpStatus::Optimal);
    EXPECT_NEAR(a.vtilde, b.vtilde, 1e-10);
  }
  EXPECT_THROW(first_order_problem_lp(golden::square_eg_program(), Vector::Zero(3)), UnsupportedCombination);
}

TEST(Tangential, SimplexMatchesClosedFormAndIsCertified) {
  Rng rng(52);
  for (int trial = 0; trial < 100; ++trial) {
    LpInstance inst = orthant_instance(rng, ActiveMode::Nondegenerate);
    const ConicProgram p = with_uncertainty(inst.program, rectangular_sets(rng, inst.program, 0.3, 1.0));
    const TangentialProblem tp = build_tangential(p, inst.xbar);
    const TangentialSolution s = solve_tangential(tp);
    ASSERT_EQ(s.status, LpStatus::Optimal);
    const auto cf = closed_form_solution(tp);
    ASSERT_TRUE(cf.has_value());
    EXPECT_LE((*cf - s.gamma).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_TRUE(s.unique);
    const Certificate cert = check_certificate(tp, s);
    EXPECT_TRUE(cert.certified);
    EXPECT_LE(cert.residual, 1e-7);
    EXPECT_GE(cert.weights.minCoeff(), 0.0);
  }
}

TEST(Tangential, ClosedFormUnavailableWhenDegenerate) {
  const ConicProgram p = golden::degen_program();
  EXPECT_FALSE(closed_form_solution(build_tangential(p, Vector::Zero(2))).has_value());
}

TEST(Tangential, NonUniqueMinimizerIsFlagged) {
  // min x1 s.t. -x1 <= 0 in R^2: gamma_2 is free at the optimum.
  Matrix A(1, 2);
  A << -1, 0;
  Vector c(2);
  c << 1, 0;
  const TangentialSolution s = solve_tangential(build_tangential(one_block(A, Vector::Zero(1), c), Vector::Zero(2)));
  ASSERT_EQ(s.status, LpStatus::Optimal);
  EXPECT_FALSE(s.unique);
  EXPECT_TRUE(s.certificate.certified);
}

TEST(Tangential, UnboundedWhenPointIsNotOptimal) {
  Matrix A(1, 1);
  A << 1;
  Vector c(1);
  c << -1;
  const TangentialSolution s = solve_tangential(build_tangential(one_block(A, Vector::Ones(1), c), Vector::Zero(1)));
  EXPECT_EQ(s.status, LpStatus::Unbounded);
}

TEST(Tangential, ConstraintQualificationMargin) {
  // x <= 0 and -x <= 0 both active: no strictly feasible tangent direction.
  Matrix A(2, 1);
  A << 1, -1;
  const TangentialProblem bad = build_tangential(one_block(A, Vector::Zero(2), Vector::Ones(1)), Vector::Zero(1));
  EXPECT_LE(cq_margin(bad), 1e-12);
  EXPECT_GT(cq_margin(build_tangential(golden::degen_program(), Vector::Zero(2))), 0.5);
}

TEST(Tangential, CertificateRejectsSuboptimalPoint) {
  const ConicProgram p = with_uncertainty(golden::degen_program(), golden::degen_s1());
  const TangentialProblem tp = build_tangential(p, Vector::Zero(2));
  TangentialSolution s = solve_tangential(tp);
  s.gamma(1) += 1.0;  // feasible, not optimal
  EXPECT_FALSE(check_certificate(tp, s).certified);
}

TEST(Tangential, SocApexUsesVertexImage) {
  const double a = 1, b = 2, delta = 0.5;
  const ConicProgram p = with_uncertainty(golden::square_eg_soc_program(), golden::square_eg_soc_s1(a, b, delta));
  const TangentialProblem tp = build_tangential(p, Vector::Zero(3));
  ASSERT_EQ(tp.roles[0], BlockRole::SelfCone);
  EXPECT_EQ(tp.selfcone[0].vertices.size(), 8u);
  const TangentialSolution s = solve_tangential(tp);
  ASSERT_EQ(s.status, LpStatus::Optimal);
  EXPECT_NEAR(s.vtilde, soc_square_brute(a / 2, b / 2, delta / 2), 1e-7);
  EXPECT_GT(s.cuts, 0);
  EXPECT_TRUE(s.certificate.certified);
  // Every vertex image lands in the cone.
  for (const auto& u : tp.selfcone[0].vertices) {
    EXPECT_LE(cone_violation(Cone::second_order(3), golden::soc_permutation() * s.gamma + u), 1e-8);
  }
}

TEST(Tangential, UniquenessProbeIsDeterministic) {
  const ConicProgram p = with_uncertainty(golden::degen_program(), golden::degen_s2());
  const TangentialProblem tp = build_tangential(p, Vector::Zero(2));
  TangentialOptions o1, o2;
  o1.seed = o2.seed = 99;
  const TangentialSolution a = solve_tangential(tp, o1), b = solve_tangential(tp, o2);
  EXPECT_EQ(a.gamma, b.gamma);
  EXPECT_EQ(a.unique, b.unique);
}

TEST(CuttingPlane, SolvesDiskProgram) {
  // min -x - y over the unit disk.
  LpProblem base;
  base.c = -Vector::Ones(2);
  base.G.resize(0, 2);
  base.h.resize(0);
  Matrix M(3, 2);
  M << 0, 0, 1, 0, 0, 1;
  Vector m(3);
  m << 1, 0, 0;
  const std::vector<SocConstraint> socs{{M, m}};
  const CutResult r = solve_with_soc_cuts(base, socs);
  ASSERT_EQ(r.lp.status, LpStatus::Optimal);
  EXPECT_TRUE(r.converged);
  // Outer cuts leave the point O(sqrt(tol)) off the boundary; the value is tight.
  EXPECT_NEAR(r.lp.x(0), 1 / std::sqrt(2.0), 1e-3);
  EXPECT_NEAR(base.c.dot(r.lp.x), -std::sqrt(2.0), 1e-7);
  EXPECT_LE(r.max_violation, 1e-8);
}

TEST(CuttingPlane, ReportsArtificialBoxAsUnbounded) {
  // min -x0 with x0 >= ||x1||: unbounded, caught by the box.
  LpProblem base;
  base.c = Vector::Zero(2);
  base.c(0) = -1;
  base.G.resize(0, 2);
  base.h.resize(0);
  const std::vector<SocConstraint> socs{{Matrix::Identity(2, 2), Vector::Zero(2)}};
  EXPECT_TRUE(solve_with_soc_cuts(base, socs).box_active);
}
