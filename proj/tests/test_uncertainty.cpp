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

TEST(Uncertainty, LMapAppliesNominalPoint) {
  Vector x(2);
  x << 1, -2;
  Perturbation p{Matrix::Identity(2, 2), Vector::Ones(2)};
  const Vector r = LMap(x)(p);
  EXPECT_DOUBLE_EQ(r(0), 0.0);
  EXPECT_DOUBLE_EQ(r(1), -3.0);
}

TEST(Uncertainty, RectangularSupportMatchesCorners) {
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const Index k = uniform_int(rng, 1, 3), n = uniform_int(rng, 1, 3);
    Matrix ea(k, n);
    Vector eb(k);
    for (Index i = 0; i < k; ++i) {
      for (Index j = 0; j < n; ++j) ea(i, j) = trial % 3 ? uniform(rng, 0.0, 1.0) : 0.0;
      eb(i) = uniform(rng, 0.0, 1.0);
    }
    const UncertaintySet s = UncertaintySet::rectangular(ea, eb);
    const Vector x = gaussian_vec(rng, n), y = gaussian_vec(rng, k);
    EXPECT_NEAR(support(s, LMap(x), y), brute_support(s, x, y), 1e-12);
  }
}

TEST(Uncertainty, CompositeSupportMatchesEnumeration) {
  Rng rng(22);
  for (int trial = 0; trial < 300; ++trial) {
    const Index k = uniform_int(rng, 1, 2), n = uniform_int(rng, 1, 2);
    const UncertaintySet s = random_set(rng, k, n, 1);
    const Vector x = gaussian_vec(rng, n), y = gaussian_vec(rng, k);
    EXPECT_NEAR(support(s, LMap(x), y), brute_support(s, x, y), 1e-10);
  }
}

TEST(Uncertainty, SupportIsSublinear) {
  Rng rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const Index k = uniform_int(rng, 1, 4), n = uniform_int(rng, 1, 4);
    const UncertaintySet s = random_set(rng, k, n, 2);
    const LMap L(gaussian_vec(rng, n));
    const Vector y1 = gaussian_vec(rng, k), y2 = gaussian_vec(rng, k);
    const double a = uniform(rng, 0.0, 3.0);
    EXPECT_LE(support(s, L, y1 + y2), support(s, L, y1) + support(s, L, y2) + 1e-12);
    EXPECT_NEAR(support(s, L, a * y1), a * support(s, L, y1), 1e-12 * (1 + std::abs(support(s, L, y1))) * (1 + a));
  }
}

TEST(Uncertainty, MinkowskiSumSupportIsPairwiseMaximum) {
  Rng rng(24);
  for (int trial = 0; trial < 100; ++trial) {
    const Index k = 2, n = 2;
    std::vector<Perturbation> a, b;
    for (int i = uniform_int(rng, 1, 4); i > 0; --i) a.push_back(random_perturbation(rng, k, n));
    for (int i = uniform_int(rng, 1, 4); i > 0; --i) b.push_back(random_perturbation(rng, k, n));
    const UncertaintySet s = UncertaintySet::minkowski_sum(UncertaintySet::vertices(a), UncertaintySet::vertices(b));
    const Vector x = gaussian_vec(rng, n), y = gaussian_vec(rng, k);
    double best = -1e300;
    for (const auto& p : a)
      for (const auto& q : b) best = std::max(best, y.dot((p.dA + q.dA) * x - (p.db + q.db)));
    EXPECT_NEAR(support(s, LMap(x), y), best, 1e-12);
  }
}

TEST(Uncertainty, ImageVerticesReproduceSupport) {
  Rng rng(25);
  for (int trial = 0; trial < 200; ++trial) {
    const Index k = uniform_int(rng, 1, 3), n = uniform_int(rng, 1, 3);
    const UncertaintySet s = random_set(rng, k, n, 2);
    const LMap L(gaussian_vec(rng, n));
    const auto verts = l_image_vertices(s, L);
    for (int d = 0; d < 5; ++d) {
      const Vector y = gaussian_vec(rng, k);
      double best = -1e300;
      for (const auto& v : verts) best = std::max(best, y.dot(v));
      EXPECT_NEAR(best, support(s, L, y), 1e-10);
    }
  }
}

TEST(Uncertainty, ZeroScaleCollapsesToOrigin) {
  Rng rng(26);
  const UncertaintySet s = UncertaintySet::scaled(0.0, random_set(rng, 2, 2, 1));
  const auto verts = l_image_vertices(s, LMap(Vector::Ones(2)));
  ASSERT_EQ(verts.size(), 1u);
  EXPECT_EQ(verts[0].norm(), 0.0);
  EXPECT_EQ(support(s, LMap(Vector::Ones(2)), Vector::Ones(2)), 0.0);
}

TEST(Uncertainty, BoxImageCapIsEnforced) {
  const UncertaintySet s = UncertaintySet::rectangular(Matrix::Zero(4, 1), Vector::Ones(4));
  EXPECT_EQ(l_image_vertices(s, LMap(Vector::Ones(1))).size(), 16u);
  EXPECT_THROW(l_image_vertices(s, LMap(Vector::Ones(1)), 3), UnsupportedCombination);
}

TEST(Uncertainty, ValidationRejectsBadSets) {
  EXPECT_FALSE(validate_compact_convex(UncertaintySet::rectangular(Matrix::Zero(1, 1), -Vector::Ones(1))));
  EXPECT_FALSE(validate_compact_convex(UncertaintySet::vertices({})));
  EXPECT_FALSE(validate_compact_convex(UncertaintySet::scaled(-1.0, UncertaintySet::zero(1, 1))));
  Matrix nan_a = Matrix::Zero(1, 1);
  nan_a(0, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_FALSE(validate_compact_convex(UncertaintySet::rectangular(nan_a, Vector::Zero(1))));
  EXPECT_TRUE(validate_compact_convex(UncertaintySet::zero(2, 3)));
}

TEST(Uncertainty, DimensionMismatchThrows) {
  EXPECT_THROW(UncertaintySet::rectangular(Matrix::Zero(2, 2), Vector::Zero(3)), DimensionError);
  EXPECT_THROW(UncertaintySet::minkowski_sum(UncertaintySet::zero(2, 2), UncertaintySet::zero(1, 2)), DimensionError);
  EXPECT_THROW(support(UncertaintySet::zero(2, 2), LMap(Vector::Zero(2)), Vector::Zero(3)), DimensionError);
}
