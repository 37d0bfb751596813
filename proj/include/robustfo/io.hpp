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

// Problem-file schema and report serialization.
//
// Problem file:
//   {
//     "objective":   {"c": [...], "d": 0},
//     "blocks":      [{"A": [[...]], "b": [...], "cone": {"type": "orthant"|"soc"|"polyhedral",
//                                                        "dim": k, "rows": [[...]]}}],
//     "uncertainty": [<set>, ...],            // one per block; null or absent = {0}
//     "sets":        {"S1": [<set>, ...]},    // named per-block sets for `calculus`
//     "xbar":        [...],                   // optional nominal point
//     "options":     {"tol_feas": 1e-9, "tol_act": 1e-8, "eps_ladder": [...], "seed": 0}
//   }
//
// <set> is one of
//   {"type": "rectangular", "epsA": [[...]], "epsB": [...]}
//   {"type": "vertices", "points": [{"dA": [[...]], "db": [...]}]}   // dA optional
//   {"type": "sum", "left": <set>, "right": <set>}
//   {"type": "scaled", "lambda": s, "inner": <set>}
//   {"type": "translated", "dA0": [[...]], "db0": [...], "inner": <set>}

#pragma once

#include "robustfo/calculus.hpp"
#include "robustfo/program.hpp"
#include "robustfo/robust.hpp"
#include "robustfo/tangential.hpp"

#include <json.hpp>

#include <cmath>
#include <iomanip>
#include <limits>
#include <locale>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace robustfo::io {

using json = nlohmann::json;

/// Schema violation, located by a JSON pointer into the input document.
struct SchemaError : std::invalid_argument {
  SchemaError(std::string ptr, const std::string& msg)
      : std::invalid_argument((ptr.empty() ? std::string("/") : ptr) + ": " + msg),
        pointer(std::move(ptr)) {}
  std::string pointer;
};

struct Options {
  Tolerances tol;
  std::vector<double> eps_ladder = default_eps_ladder();
  std::uint64_t seed = 0;
};

struct ProblemFile {
  ConicProgram program;
  std::map<std::string, BlockSets> sets;
  std::optional<Vector> xbar;
  Options options;
};

namespace detail {

inline std::string child(const std::string& ptr, const std::string& key) {
  std::string k;
  for (char ch : key) {
    if (ch == '~') k += "~0";
    else if (ch == '/') k += "~1";
    else k += ch;
  }
  return ptr + "/" + k;
}
inline std::string child(const std::string& ptr, std::size_t i) { return ptr + "/" + std::to_string(i); }

inline const json& field(const json& j, const std::string& ptr, const char* key) {
  if (!j.is_object()) throw SchemaError(ptr, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(child(ptr, key), "required field is missing");
  return *it;
}

inline double read_number(const json& j, const std::string& ptr) {
  if (!j.is_number()) throw SchemaError(ptr, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw SchemaError(ptr, "number is not finite");
  return v;
}

inline Vector read_vector(const json& j, const std::string& ptr, Index expect = -1) {
  if (!j.is_array()) throw SchemaError(ptr, "expected an array of numbers");
  if (expect >= 0 && static_cast<Index>(j.size()) != expect) {
    throw SchemaError(ptr, "expected length " + std::to_string(expect) + ", got " +
                               std::to_string(j.size()));
  }
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = read_number(j[i], child(ptr, i));
  return v;
}

inline Matrix read_matrix(const json& j, const std::string& ptr, Index rows = -1, Index cols = -1) {
  if (!j.is_array()) throw SchemaError(ptr, "expected an array of rows");
  if (rows >= 0 && static_cast<Index>(j.size()) != rows) {
    throw SchemaError(ptr, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  }
  if (j.empty()) return Matrix(0, std::max<Index>(cols, 0));
  const Index nc = cols >= 0 ? cols : static_cast<Index>(j[0].is_array() ? j[0].size() : 0);
  Matrix M(static_cast<Index>(j.size()), nc);
  for (std::size_t r = 0; r < j.size(); ++r) {
    M.row(static_cast<Index>(r)) = read_vector(j[r], child(ptr, r), nc).transpose();
  }
  return M;
}

inline Cone read_cone(const json& j, const std::string& ptr, Index k) {
  const std::string type = [&] {
    const json& t = field(j, ptr, "type");
    if (!t.is_string()) throw SchemaError(child(ptr, "type"), "expected a string");
    return t.get<std::string>();
  }();
  if (j.contains("dim")) {
    const double dim = read_number(j["dim"], child(ptr, "dim"));
    if (dim != static_cast<double>(k)) {
      throw SchemaError(child(ptr, "dim"), "cone dimension " + std::to_string(static_cast<long>(dim)) +
                                               " does not match the block's " + std::to_string(k) + " rows");
    }
  }
  if (type == "orthant") return Cone::orthant(k);
  if (type == "soc") return Cone::second_order(k);
  if (type == "polyhedral") {
    const std::string rp = child(ptr, "rows");
    const Matrix rows = read_matrix(field(j, ptr, "rows"), rp, -1, k);
    try {
      return Cone::polyhedral(rows);
    } catch (const std::invalid_argument& e) {
      throw SchemaError(rp, e.what());
    }
  }
  throw SchemaError(child(ptr, "type"), "unknown cone type '" + type + "' (orthant, soc, polyhedral)");
}

inline UncertaintySet read_set(const json& j, const std::string& ptr, Index k, Index n) {
  if (j.is_null()) return UncertaintySet::zero(k, n);
  const json& t = field(j, ptr, "type");
  if (!t.is_string()) throw SchemaError(child(ptr, "type"), "expected a string");
  const std::string type = t.get<std::string>();
  if (type == "rectangular") {
    Matrix ea = j.contains("epsA") ? read_matrix(j["epsA"], child(ptr, "epsA"), k, n) : Matrix::Zero(k, n);
    Vector eb = j.contains("epsB") ? read_vector(j["epsB"], child(ptr, "epsB"), k) : Vector::Zero(k);
    if ((ea.size() && ea.minCoeff() < 0.0) || (eb.size() && eb.minCoeff() < 0.0)) {
      throw SchemaError(ptr, "rectangular bounds must be >= 0");
    }
    return UncertaintySet::rectangular(std::move(ea), std::move(eb));
  }
  if (type == "vertices") {
    const std::string pp = child(ptr, "points");
    const json& pts = field(j, ptr, "points");
    if (!pts.is_array() || pts.empty()) throw SchemaError(pp, "expected a nonempty array of points");
    bool any_da = false;
    for (const auto& p : pts) any_da = any_da || (p.is_object() && p.contains("dA"));
    if (!any_da) {
      std::vector<Vector> db;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        db.push_back(read_vector(field(pts[i], child(pp, i), "db"), child(child(pp, i), "db"), k));
      }
      return UncertaintySet::b_vertices(std::move(db), n);
    }
    std::vector<Perturbation> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const std::string ip = child(pp, i);
      Perturbation p;
      p.dA = pts[i].contains("dA") ? read_matrix(pts[i]["dA"], child(ip, "dA"), k, n) : Matrix::Zero(k, n);
      p.db = pts[i].contains("db") ? read_vector(pts[i]["db"], child(ip, "db"), k) : Vector::Zero(k);
      out.push_back(std::move(p));
    }
    return UncertaintySet::vertices(std::move(out));
  }
  if (type == "sum") {
    return UncertaintySet::minkowski_sum(read_set(field(j, ptr, "left"), child(ptr, "left"), k, n),
                                         read_set(field(j, ptr, "right"), child(ptr, "right"), k, n));
  }
  if (type == "scaled") {
    const double lambda = read_number(field(j, ptr, "lambda"), child(ptr, "lambda"));
    if (lambda < 0.0) throw SchemaError(child(ptr, "lambda"), "scale factor must be >= 0");
    return UncertaintySet::scaled(lambda, read_set(field(j, ptr, "inner"), child(ptr, "inner"), k, n));
  }
  if (type == "translated") {
    Perturbation s;
    s.dA = j.contains("dA0") ? read_matrix(j["dA0"], child(ptr, "dA0"), k, n) : Matrix::Zero(k, n);
    s.db = j.contains("db0") ? read_vector(j["db0"], child(ptr, "db0"), k) : Vector::Zero(k);
    return UncertaintySet::translated(std::move(s),
                                      read_set(field(j, ptr, "inner"), child(ptr, "inner"), k, n));
  }
  throw SchemaError(child(ptr, "type"), "unknown set type '" + type +
                                            "' (rectangular, vertices, sum, scaled, translated)");
}

inline BlockSets read_block_sets(const json& j, const std::string& ptr, const ConicProgram& p) {
  if (!j.is_array()) throw SchemaError(ptr, "expected one set per block");
  if (j.size() != p.blocks.size()) {
    throw SchemaError(ptr, "expected " + std::to_string(p.blocks.size()) + " sets, got " +
                               std::to_string(j.size()));
  }
  BlockSets out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(read_set(j[i], child(ptr, i), p.blocks[i].A.rows(), p.num_vars()));
  }
  return out;
}

}  // namespace detail

/// Parses and validates a problem document. Throws SchemaError.
inline ProblemFile read_problem(const json& doc) {
  using namespace detail;
  if (!doc.is_object()) throw SchemaError("", "problem file must be a JSON object");
  ProblemFile pf;
  ConicProgram& p = pf.program;
  const json& obj = field(doc, "", "objective");
  p.c = read_vector(field(obj, "/objective", "c"), "/objective/c");
  if (p.c.size() == 0) throw SchemaError("/objective/c", "need at least one variable");
  p.d = obj.contains("d") ? read_number(obj["d"], "/objective/d") : 0.0;
  const Index n = p.c.size();

  const json& blocks = field(doc, "", "blocks");
  if (!blocks.is_array()) throw SchemaError("/blocks", "expected an array");
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const std::string bp = child("/blocks", i);
    Matrix A = read_matrix(field(blocks[i], bp, "A"), child(bp, "A"), -1, n);
    if (A.rows() == 0) throw SchemaError(child(bp, "A"), "block needs at least one row");
    Vector b = read_vector(field(blocks[i], bp, "b"), child(bp, "b"), A.rows());
    Cone cone = read_cone(field(blocks[i], bp, "cone"), child(bp, "cone"), A.rows());
    p.blocks.push_back({std::move(A), std::move(b), std::move(cone)});
  }

  if (doc.contains("uncertainty") && !doc["uncertainty"].is_null()) {
    p.uncertainty = read_block_sets(doc["uncertainty"], "/uncertainty", p);
  } else {
    for (const auto& b : p.blocks) p.uncertainty.push_back(UncertaintySet::zero(b.A.rows(), n));
  }
  for (std::size_t i = 0; i < p.uncertainty.size(); ++i) {
    if (auto chk = validate_compact_convex(p.uncertainty[i]); !chk) {
      throw SchemaError(child("/uncertainty", i), chk.diagnostic);
    }
  }

  if (doc.contains("sets")) {
    const json& sets = doc["sets"];
    if (!sets.is_object()) throw SchemaError("/sets", "expected an object of named set lists");
    for (auto it = sets.begin(); it != sets.end(); ++it) {
      const std::string sp = child("/sets", it.key());
      BlockSets bs = read_block_sets(it.value(), sp, p);
      for (std::size_t i = 0; i < bs.size(); ++i) {
        if (auto chk = validate_compact_convex(bs[i]); !chk) throw SchemaError(child(sp, i), chk.diagnostic);
      }
      pf.sets.emplace(it.key(), std::move(bs));
    }
  }
  if (doc.contains("xbar")) pf.xbar = read_vector(doc["xbar"], "/xbar", n);

  if (doc.contains("options")) {
    const json& o = doc["options"];
    if (!o.is_object()) throw SchemaError("/options", "expected an object");
    if (o.contains("tol_feas")) pf.options.tol.feas = read_number(o["tol_feas"], "/options/tol_feas");
    if (o.contains("tol_act")) pf.options.tol.act = read_number(o["tol_act"], "/options/tol_act");
    if (o.contains("eps_ladder")) {
      const Vector e = read_vector(o["eps_ladder"], "/options/eps_ladder");
      pf.options.eps_ladder.assign(e.data(), e.data() + e.size());
      for (std::size_t i = 0; i < pf.options.eps_ladder.size(); ++i) {
        if (!(pf.options.eps_ladder[i] > 0.0)) throw SchemaError(child("/options/eps_ladder", i), "eps must be > 0");
      }
    }
    if (o.contains("seed")) {
      if (!o["seed"].is_number_unsigned()) throw SchemaError("/options/seed", "expected a nonnegative integer");
      pf.options.seed = o["seed"].get<std::uint64_t>();
    }
    if (!(pf.options.tol.feas > 0.0)) throw SchemaError("/options/tol_feas", "must be > 0");
    if (!(pf.options.tol.act > 0.0)) throw SchemaError("/options/tol_act", "must be > 0");
  }
  return pf;
}

inline ProblemFile parse_problem(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("invalid JSON: ") + e.what());
  }
  return read_problem(doc);
}

// ---------------------------------------------------------------------------
// Serialization

inline json to_json(const Vector& v) {
  json a = json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(std::isfinite(v(i)) ? json(v(i) + 0.0) : json(nullptr));  // + 0.0 drops -0
  return a;
}

inline json to_json(const Matrix& m) {
  json a = json::array();
  for (Index r = 0; r < m.rows(); ++r) a.push_back(to_json(Vector(m.row(r).transpose())));
  return a;
}

inline json number(double x) { return std::isfinite(x) ? json(x + 0.0) : json(nullptr); }

inline json to_json(const UncertaintySet& s) {
  using U = UncertaintySet;
  return std::visit(
      robustfo::detail::overloaded{
          [](const U::Rectangular& r) -> json {
            return {{"type", "rectangular"}, {"epsA", to_json(r.eps_a)}, {"epsB", to_json(r.eps_b)}};
          },
          [](const U::Vertices& v) -> json {
            json pts = json::array();
            for (const auto& p : v.points) pts.push_back({{"dA", to_json(p.dA)}, {"db", to_json(p.db)}});
            return {{"type", "vertices"}, {"points", pts}};
          },
          [](const U::BVertices& v) -> json {
            json pts = json::array();
            for (const auto& p : v.points) pts.push_back({{"db", to_json(p)}});
            return {{"type", "vertices"}, {"points", pts}};
          },
          [](const U::Scaled& s) -> json {
            return {{"type", "scaled"}, {"lambda", s.lambda}, {"inner", to_json(s.inner)}};
          },
          [](const U::Translated& t) -> json {
            return {{"type", "translated"}, {"dA0", to_json(t.shift.dA)}, {"db0", to_json(t.shift.db)},
                    {"inner", to_json(t.inner)}};
          },
          [](const U::Sum& s) -> json {
            return {{"type", "sum"}, {"left", to_json(s.left)}, {"right", to_json(s.right)}};
          },
      },
      s.node());
}

inline json to_json(const Tolerances& t) {
  return {{"tol_feas", t.feas}, {"tol_act", t.act}, {"tol_pivot", t.pivot}};
}

inline json to_json(const NominalSolution& s) {
  json blocks = json::array();
  for (auto st : s.block_state) blocks.push_back(to_string(st));
  return {{"status", to_string(s.status)}, {"x", to_json(s.x)}, {"value", number(s.value)},
          {"blocks", blocks}, {"cuts", s.cuts}, {"message", s.message}};
}

inline json to_json(const TangentialSolution& s) {
  json active = json::array();
  for (Index r : s.active) active.push_back(r);
  return {{"status", to_string(s.status)},
          {"gamma", to_json(s.gamma)},
          {"vtilde", number(s.vtilde)},
          {"active", active},
          {"unique", s.unique},
          {"certified", s.certificate.certified},
          {"certificate_residual", number(s.certificate.residual)},
          {"certificate_weights", to_json(s.certificate.weights)},
          {"cq_margin", number(s.cq_margin)},
          {"cq_ok", s.cq_ok},
          {"cuts", s.cuts},
          {"message", s.message}};
}

inline json to_json(const TangentialProblem& tp) {
  json rows = json::array();
  for (const auto& r : tp.rows) {
    rows.push_back({{"block", r.block}, {"normal", to_json(r.normal)}, {"coeffs", to_json(r.coeffs)},
                    {"threshold", r.threshold}});
  }
  json roles = json::array();
  for (auto r : tp.roles) roles.push_back(to_string(r));
  json sc = json::array();
  for (const auto& s : tp.selfcone) {
    json verts = json::array();
    for (const auto& v : s.vertices) verts.push_back(to_json(v));
    sc.push_back({{"block", s.block}, {"vertices", verts}});
  }
  return {{"rows", rows}, {"roles", roles}, {"selfcone", sc}};
}

inline json to_json(const SweepReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"eps", row.eps},
                    {"status", to_string(row.status)},
                    {"x", to_json(row.x)},
                    {"v_eps", number(row.value)},
                    {"residual", number(row.residual)},
                    {"gamma_hat", to_json(row.gamma_hat)},
                    {"dir_err", number(row.dir_err)}});
  }
  return {{"rows", rows},
          {"xbar", to_json(r.xbar)},
          {"vbar", r.vbar},
          {"gammabar", to_json(r.gammabar)},
          {"vtilde", number(r.vtilde)},
          {"unique", r.unique},
          {"slope", number(r.slope)},
          {"secant_slope", number(r.secant_slope)},
          {"curvature", number(r.curvature)},
          {"tail_dir_err", number(r.tail_dir_err)},
          {"linearity_onset", r.linearity_onset ? json(*r.linearity_onset) : json(nullptr)},
          {"tol_dir", r.tol_dir},
          {"tol_slope", r.tol_slope},
          {"verdict", to_string(r.verdict)},
          {"reason", r.reason}};
}

inline json to_json(const AdditionReport& r) {
  return {{"lambda1", r.lambda1},     {"lambda2", r.lambda2},
          {"v_left", r.v_left},       {"v_right", r.v_right},
          {"v_sum", r.v_sum},         {"gap", r.gap},
          {"tol", r.tol},             {"subadditive", r.subadditive},
          {"nondegenerate", r.nondegenerate}, {"equality_holds", r.equality_holds},
          {"violation", r.violation}, {"diagnosis", r.diagnosis}};
}

/// Locale-independent 17-significant-digit formatting.
inline std::string fmt17(double x) {
  if (!std::isfinite(x)) return "";
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(17) << x;
  return os.str();
}

/// CSV with columns eps,status,v_eps,residual,gamma_hat_0..,dir_err.
inline std::string to_csv(const SweepReport& r) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  const Index n = r.gammabar.size();
  os << "eps,status,v_eps,residual";
  for (Index k = 0; k < n; ++k) os << ",gamma_hat_" << k;
  os << ",dir_err\n";
  for (const auto& row : r.rows) {
    os << fmt17(row.eps) << ',' << to_string(row.status) << ',' << fmt17(row.value) << ','
       << fmt17(row.residual);
    for (Index k = 0; k < n; ++k) os << ',' << (row.gamma_hat.size() == n ? fmt17(row.gamma_hat(k)) : "");
    os << ',' << fmt17(row.dir_err) << '\n';
  }
  return os.str();
}

}  // namespace robustfo::io
