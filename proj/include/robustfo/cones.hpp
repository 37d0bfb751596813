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

#include "robustfo/common.hpp"

#include <cmath>
#include <string>

namespace robustfo {

enum class ConeKind { OrthantNonpositive, SecondOrder, Polyhedral };

inline const char* to_string(ConeKind k) {
  switch (k) {
    case ConeKind::OrthantNonpositive: return "orthant";
    case ConeKind::SecondOrder: return "soc";
    case ConeKind::Polyhedral: return "polyhedral";
  }
  return "?";
}

/// Closed convex cone Q in R^k.
///
///  - orthant:    {z : z_j <= 0 for all j}, i.e. the rows "A x <= b".
///  - soc:        {z : ||(z_1..z_{k-1})||_2 <= z_0}; coordinate 0 is the radius.
///  - polyhedral: {z : v^T z <= 0 for every stored row v}. Rows are
///                normalized to unit length on construction.
class Cone {
 public:
  static Cone orthant(Index dim) { return Cone(ConeKind::OrthantNonpositive, dim, {}); }

  static Cone second_order(Index dim) { return Cone(ConeKind::SecondOrder, dim, {}); }

  static Cone polyhedral(Matrix rows) {
    if (rows.rows() == 0 || rows.cols() == 0) {
      throw std::invalid_argument("polyhedral cone needs at least one row of positive length");
    }
    for (Index r = 0; r < rows.rows(); ++r) {
      const double nrm = rows.row(r).norm();
      if (!std::isfinite(nrm) || nrm == 0.0) {
        throw std::invalid_argument("polyhedral cone row " + std::to_string(r) +
                                    " is zero or not finite");
      }
      rows.row(r) /= nrm;
    }
    const Index dim = rows.cols();
    return Cone(ConeKind::Polyhedral, dim, std::move(rows));
  }

  ConeKind kind() const { return kind_; }
  Index dim() const { return dim_; }
  const Matrix& rows() const { return rows_; }

 private:
  Cone(ConeKind kind, Index dim, Matrix rows) : kind_(kind), dim_(dim), rows_(std::move(rows)) {
    if (dim_ < 1) throw std::invalid_argument("cone dimension must be >= 1");
  }

  ConeKind kind_;
  Index dim_;
  Matrix rows_;
};

namespace detail {

inline double soc_tail_norm(const Vector& z) {
  return z.size() > 1 ? z.tail(z.size() - 1).norm() : 0.0;
}

}  // namespace detail

/// Largest violation of the cone's defining inequalities at z (<= 0 inside).
inline double cone_violation(const Cone& cone, const Vector& z) {
  require_dim(z.size(), cone.dim(), "cone_violation");
  switch (cone.kind()) {
    case ConeKind::OrthantNonpositive: return z.maxCoeff();
    case ConeKind::SecondOrder: return detail::soc_tail_norm(z) - z(0);
    case ConeKind::Polyhedral: return (cone.rows() * z).maxCoeff();
  }
  return 0.0;
}

inline bool cone_contains(const Cone& cone, const Vector& z, double tol) {
  return cone_violation(cone, z) <= tol;
}

enum class TangentKind { FullSpace, Halfspaces, SelfCone };

/// Tangent cone T_Q(z). Halfspaces means {w : n^T w <= 0 for every row n of
/// `normals`}; rows are unit length. SelfCone means T_Q(0) = Q.
struct TangentCone {
  TangentKind kind = TangentKind::FullSpace;
  Matrix normals;
  Cone cone = Cone::orthant(1);

  bool contains(const Vector& w, double tol) const {
    switch (kind) {
      case TangentKind::FullSpace: return true;
      case TangentKind::Halfspaces: return normals.rows() == 0 || (normals * w).maxCoeff() <= tol;
      case TangentKind::SelfCone: return cone_contains(cone, w, tol);
    }
    return false;
  }
};

namespace detail {

inline TangentCone halfspaces_from(const Cone& cone, Matrix normals) {
  TangentCone t;
  t.cone = cone;
  if (normals.rows() == 0) {
    t.kind = TangentKind::FullSpace;
  } else {
    t.kind = TangentKind::Halfspaces;
    t.normals = std::move(normals);
  }
  return t;
}

}  // namespace detail

/// Tangent cone of `cone` at the point z, which must lie in the cone within
/// tol_act. Constraints with residual inside tol_act are treated as active.
inline TangentCone tangent_cone_at(const Cone& cone, const Vector& z, double tol_act) {
  require_dim(z.size(), cone.dim(), "tangent_cone_at");
  if (!cone_contains(cone, z, tol_act)) {
    throw InfeasiblePoint("tangent_cone_at: point lies outside the " +
                          std::string(to_string(cone.kind())) + " cone (violation " +
                          std::to_string(cone_violation(cone, z)) + ")");
  }
  switch (cone.kind()) {
    case ConeKind::OrthantNonpositive: {
      Index active = 0;
      for (Index j = 0; j < z.size(); ++j) active += (z(j) >= -tol_act);
      Matrix normals = Matrix::Zero(active, z.size());
      Index r = 0;
      for (Index j = 0; j < z.size(); ++j) {
        if (z(j) >= -tol_act) normals(r++, j) = 1.0;
      }
      return detail::halfspaces_from(cone, std::move(normals));
    }
    case ConeKind::SecondOrder: {
      if (z.norm() <= tol_act) {
        TangentCone t;
        t.kind = TangentKind::SelfCone;
        t.cone = cone;
        return t;
      }
      if (z(0) - detail::soc_tail_norm(z) > tol_act) return detail::halfspaces_from(cone, {});
      // Boundary point away from the apex: the outward normal is R z with R
      // flipping the sign of the radius coordinate.
      Vector n = z;
      n(0) = -n(0);
      Matrix normals = (n / n.norm()).transpose();
      return detail::halfspaces_from(cone, std::move(normals));
    }
    case ConeKind::Polyhedral: {
      const Vector slack = cone.rows() * z;
      Index active = 0;
      for (Index r = 0; r < slack.size(); ++r) active += (slack(r) >= -tol_act);
      Matrix normals(active, z.size());
      Index k = 0;
      for (Index r = 0; r < slack.size(); ++r) {
        if (slack(r) >= -tol_act) normals.row(k++) = cone.rows().row(r);
      }
      return detail::halfspaces_from(cone, std::move(normals));
    }
  }
  return {};
}

}  // namespace robustfo
