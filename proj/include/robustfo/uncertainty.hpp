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

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace robustfo {

/// One realization (dA, dB) of the data perturbation of a block with k rows
/// and n columns.
struct Perturbation {
  Matrix dA;
  Vector db;
};

/// L(dA, db) = dA * xbar - db, the residual shift caused by a perturbation at
/// the nominal point.
class LMap {
 public:
  explicit LMap(Vector xbar) : xbar_(std::move(xbar)) {}

  const Vector& xbar() const { return xbar_; }

  Vector operator()(const Perturbation& p) const {
    require_dim(p.dA.cols(), xbar_.size(), "LMap dA columns");
    return p.dA * xbar_ - p.db;
  }

 private:
  Vector xbar_;
};

/// Compact convex perturbation set over (dA, db), kept as an immutable
/// expression tree so scaled copies share structure.
class UncertaintySet {
 public:
  struct Rectangular {
    Matrix eps_a;  // |dA_jk| <= eps_a(j,k)
    Vector eps_b;  // |db_j| <= eps_b(j)
  };
  struct Vertices {
    std::vector<Perturbation> points;
  };
  /// Vertex list over db only; dA is identically zero.
  struct BVertices {
    std::vector<Vector> points;
    Index cols = 0;
  };
  struct Scaled;
  struct Translated;
  struct Sum;
  using Node = std::variant<Rectangular, Vertices, BVertices, Scaled, Translated, Sum>;

  static UncertaintySet rectangular(Matrix eps_a, Vector eps_b);
  static UncertaintySet vertices(std::vector<Perturbation> points);
  static UncertaintySet b_vertices(std::vector<Vector> points, Index cols);
  static UncertaintySet scaled(double lambda, UncertaintySet inner);
  static UncertaintySet translated(Perturbation shift, UncertaintySet inner);
  static UncertaintySet minkowski_sum(UncertaintySet left, UncertaintySet right);
  /// {(0, 0)} with k rows and n columns.
  static UncertaintySet zero(Index rows, Index cols) {
    return rectangular(Matrix::Zero(rows, cols), Vector::Zero(rows));
  }

  const Node& node() const;
  Index rows() const { return rows_; }
  Index cols() const { return cols_; }

 private:
  UncertaintySet(std::shared_ptr<const Node> node, Index rows, Index cols)
      : node_(std::move(node)), rows_(rows), cols_(cols) {}

  std::shared_ptr<const Node> node_;
  Index rows_ = 0;
  Index cols_ = 0;
};

struct UncertaintySet::Scaled {
  double lambda;
  UncertaintySet inner;
};
struct UncertaintySet::Translated {
  Perturbation shift;
  UncertaintySet inner;
};
struct UncertaintySet::Sum {
  UncertaintySet left;
  UncertaintySet right;
};

inline const UncertaintySet::Node& UncertaintySet::node() const { return *node_; }

inline UncertaintySet UncertaintySet::rectangular(Matrix eps_a, Vector eps_b) {
  require_dim(eps_b.size(), eps_a.rows(), "rectangular set epsB");
  const Index k = eps_a.rows(), n = eps_a.cols();
  return {std::make_shared<const Node>(Rectangular{std::move(eps_a), std::move(eps_b)}), k, n};
}

inline UncertaintySet UncertaintySet::vertices(std::vector<Perturbation> points) {
  Index k = 0, n = 0;
  if (!points.empty()) {
    k = points.front().db.size();
    n = points.front().dA.cols();
    for (const auto& p : points) {
      require_dim(p.db.size(), k, "vertex db");
      require_dim(p.dA.rows(), k, "vertex dA rows");
      require_dim(p.dA.cols(), n, "vertex dA columns");
    }
  }
  return {std::make_shared<const Node>(Vertices{std::move(points)}), k, n};
}

inline UncertaintySet UncertaintySet::b_vertices(std::vector<Vector> points, Index cols) {
  Index k = points.empty() ? 0 : points.front().size();
  for (const auto& p : points) require_dim(p.size(), k, "vertex db");
  return {std::make_shared<const Node>(BVertices{std::move(points), cols}), k, cols};
}

inline UncertaintySet UncertaintySet::scaled(double lambda, UncertaintySet inner) {
  const Index k = inner.rows(), n = inner.cols();
  return {std::make_shared<const Node>(Scaled{lambda, std::move(inner)}), k, n};
}

inline UncertaintySet UncertaintySet::translated(Perturbation shift, UncertaintySet inner) {
  require_dim(shift.db.size(), inner.rows(), "translation db");
  require_dim(shift.dA.rows(), inner.rows(), "translation dA rows");
  require_dim(shift.dA.cols(), inner.cols(), "translation dA columns");
  const Index k = inner.rows(), n = inner.cols();
  return {std::make_shared<const Node>(Translated{std::move(shift), std::move(inner)}), k, n};
}

inline UncertaintySet UncertaintySet::minkowski_sum(UncertaintySet left, UncertaintySet right) {
  require_dim(right.rows(), left.rows(), "Minkowski sum rows");
  require_dim(right.cols(), left.cols(), "Minkowski sum columns");
  const Index k = left.rows(), n = left.cols();
  return {std::make_shared<const Node>(Sum{std::move(left), std::move(right)}), k, n};
}

namespace detail {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

}  // namespace detail

/// h(y) = max over (dA, db) in the set of y^T (dA xbar - db).
inline double support(const UncertaintySet& set, const LMap& L, const Vector& y) {
  require_dim(y.size(), set.rows(), "support direction");
  require_dim(L.xbar().size(), set.cols(), "support xbar");
  using U = UncertaintySet;
  return std::visit(
      detail::overloaded{
          [&](const U::Rectangular& r) {
            const Vector radius = r.eps_b + r.eps_a * L.xbar().cwiseAbs();
            return y.cwiseAbs().dot(radius);
          },
          [&](const U::Vertices& v) {
            if (v.points.empty()) throw std::domain_error("support of an empty vertex set");
            double best = -std::numeric_limits<double>::infinity();
            for (const auto& p : v.points) best = std::max(best, y.dot(L(p)));
            return best;
          },
          [&](const U::BVertices& v) {
            if (v.points.empty()) throw std::domain_error("support of an empty vertex set");
            double best = -std::numeric_limits<double>::infinity();
            for (const auto& p : v.points) best = std::max(best, -y.dot(p));
            return best;
          },
          [&](const U::Scaled& s) {
            return s.lambda == 0.0 ? 0.0 : s.lambda * support(s.inner, L, y);
          },
          [&](const U::Translated& t) { return support(t.inner, L, y) + y.dot(L(t.shift)); },
          [&](const U::Sum& s) { return support(s.left, L, y) + support(s.right, L, y); },
      },
      set.node());
}

namespace detail {

inline bool lex_less(const Vector& a, const Vector& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(),
                                      b.data() + b.size());
}

inline void dedupe(std::vector<Vector>& pts) {
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vector& a, const Vector& b) { return a == b; }),
            pts.end());
}

inline constexpr std::size_t kMaxImagePoints = 1u << 20;

}  // namespace detail

/// Finite list V with conv(V) = L(set). Rectangular sets map to a box in the
/// residual space, emitted as its corner list; at most `max_box_dim` box
/// coordinates may have nonzero radius.
inline std::vector<Vector> l_image_vertices(const UncertaintySet& set, const LMap& L,
                                            Index max_box_dim = 20) {
  require_dim(L.xbar().size(), set.cols(), "l_image_vertices xbar");
  using U = UncertaintySet;
  const Index k = set.rows();
  std::vector<Vector> out = std::visit(
      detail::overloaded{
          [&](const U::Rectangular& r) {
            const Vector radius = r.eps_b + r.eps_a * L.xbar().cwiseAbs();
            std::vector<Index> live;
            for (Index j = 0; j < k; ++j) {
              if (radius(j) != 0.0) live.push_back(j);
            }
            if (static_cast<Index>(live.size()) > max_box_dim) {
              throw UnsupportedCombination("box image has " + std::to_string(live.size()) +
                                           " nonzero radii; corner enumeration is capped at " +
                                           std::to_string(max_box_dim));
            }
            std::vector<Vector> corners;
            const std::size_t count = std::size_t{1} << live.size();
            corners.reserve(count);
            for (std::size_t mask = 0; mask < count; ++mask) {
              Vector v = Vector::Zero(k);
              for (std::size_t b = 0; b < live.size(); ++b) {
                const Index j = live[b];
                v(j) = (mask >> b) & 1u ? radius(j) : -radius(j);
              }
              corners.push_back(std::move(v));
            }
            return corners;
          },
          [&](const U::Vertices& v) {
            std::vector<Vector> pts;
            for (const auto& p : v.points) pts.push_back(L(p));
            return pts;
          },
          [&](const U::BVertices& v) {
            std::vector<Vector> pts;
            for (const auto& p : v.points) pts.push_back(-p);
            return pts;
          },
          [&](const U::Scaled& s) {
            if (s.lambda == 0.0) return std::vector<Vector>{Vector::Zero(k)};
            auto pts = l_image_vertices(s.inner, L, max_box_dim);
            for (auto& p : pts) p *= s.lambda;
            return pts;
          },
          [&](const U::Translated& t) {
            auto pts = l_image_vertices(t.inner, L, max_box_dim);
            const Vector shift = L(t.shift);
            for (auto& p : pts) p += shift;
            return pts;
          },
          [&](const U::Sum& s) {
            const auto a = l_image_vertices(s.left, L, max_box_dim);
            const auto b = l_image_vertices(s.right, L, max_box_dim);
            if (a.size() * b.size() > detail::kMaxImagePoints) {
              throw UnsupportedCombination("Minkowski sum image exceeds the vertex cap");
            }
            std::vector<Vector> pts;
            pts.reserve(a.size() * b.size());
            for (const auto& u : a) {
              for (const auto& w : b) pts.push_back(u + w);
            }
            return pts;
          },
      },
      set.node());
  detail::dedupe(out);
  if (out.empty()) throw std::domain_error("l_image_vertices: set is empty");
  return out;
}

struct SetCheck {
  bool valid = true;
  std::string diagnostic;

  explicit operator bool() const { return valid; }
};

/// Structural check that the expression denotes a nonempty compact convex
/// set: finite data, nonnegative bounds and scale factors, nonempty vertex
/// lists, consistent dimensions.
inline SetCheck validate_compact_convex(const UncertaintySet& set) {
  using U = UncertaintySet;
  auto fail = [](std::string why) { return SetCheck{false, std::move(why)}; };
  return std::visit(
      detail::overloaded{
          [&](const U::Rectangular& r) -> SetCheck {
            if (!r.eps_a.allFinite() || !r.eps_b.allFinite()) {
              return fail("rectangular bounds are not finite");
            }
            if ((r.eps_a.size() > 0 && r.eps_a.minCoeff() < 0.0) ||
                (r.eps_b.size() > 0 && r.eps_b.minCoeff() < 0.0)) {
              return fail("rectangular bounds must be >= 0");
            }
            return {};
          },
          [&](const U::Vertices& v) -> SetCheck {
            if (v.points.empty()) return fail("vertex list is empty");
            for (const auto& p : v.points) {
              if (!p.dA.allFinite() || !p.db.allFinite()) return fail("vertex is not finite");
            }
            return {};
          },
          [&](const U::BVertices& v) -> SetCheck {
            if (v.points.empty()) return fail("vertex list is empty");
            for (const auto& p : v.points) {
              if (!p.allFinite()) return fail("vertex is not finite");
            }
            return {};
          },
          [&](const U::Scaled& s) -> SetCheck {
            if (!std::isfinite(s.lambda) || s.lambda < 0.0) {
              return fail("scale factor must be finite and >= 0, got " +
                          std::to_string(s.lambda));
            }
            return validate_compact_convex(s.inner);
          },
          [&](const U::Translated& t) -> SetCheck {
            if (!t.shift.dA.allFinite() || !t.shift.db.allFinite()) {
              return fail("translation is not finite");
            }
            return validate_compact_convex(t.inner);
          },
          [&](const U::Sum& s) -> SetCheck {
            if (auto l = validate_compact_convex(s.left); !l) return l;
            return validate_compact_convex(s.right);
          },
      },
      set.node());
}

}  // namespace robustfo
