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

// Command-line front end. Kept in a header so the test suite can run it
// in-process with captured streams.
//
// Exit codes: 0 success / pass, 1 solve-level failure (infeasible, unbounded,
// inconclusive, failed check), 2 input error, 3 internal numerical failure.

#pragma once

#include "robustfo/golden.hpp"
#include "robustfo/io.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#ifndef ROBUSTFO_DATA_DIR
#define ROBUSTFO_DATA_DIR "data"
#endif

namespace robustfo::cli {

using io::json;

enum ExitCode : int { kOk = 0, kSolveFailure = 1, kInputError = 2, kInternalError = 3 };

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline const std::vector<std::string>& example_names() {
  static const std::vector<std::string> names{"degen", "square-eg", "square-eg-soc", "socp-walkthrough"};
  return names;
}

inline std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return os.str();
}

inline int exit_for(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return kOk;
    case LpStatus::Infeasible:
    case LpStatus::Unbounded: return kSolveFailure;
    case LpStatus::NumericalFailure: return kInternalError;
  }
  return kInternalError;
}

inline std::vector<double> parse_eps_list(const std::string& s) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t end = std::min(s.find(',', pos), s.size());
    std::string tok = s.substr(pos, end - pos);
    tok.erase(0, tok.find_first_not_of(" \t"));
    tok.erase(tok.find_last_not_of(" \t") + 1);
    double v = 0.0;
    const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || p != tok.data() + tok.size() || !(v > 0.0) || !std::isfinite(v)) {
      throw InputError("--eps: '" + tok + "' is not a positive number");
    }
    out.push_back(v);
    pos = end + 1;
  }
  return out;
}

struct Settings {
  std::string file;
  std::string format = "json";
  std::string out_dir;
  std::string eps;
  std::optional<double> tol_feas;
  std::optional<double> tol_act;
  std::optional<std::uint64_t> seed;
  std::string left;
  std::string right;
  double lambda1 = 1.0;
  double lambda2 = 1.0;
  std::string example;
  std::optional<double> a, b, delta;
  std::string data_dir = ROBUSTFO_DATA_DIR;
};

struct Loaded {
  io::ProblemFile pf;
  std::string sha256;
  Tolerances tol;
  std::uint64_t seed = 0;
  std::vector<double> ladder;
};

inline Loaded load(const std::string& path, const Settings& s) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  Loaded l{io::parse_problem(text), sha256_hex(text), {}, 0, {}};
  l.tol = l.pf.options.tol;
  if (s.tol_feas) l.tol.feas = *s.tol_feas;
  if (s.tol_act) l.tol.act = *s.tol_act;
  if (!(l.tol.feas > 0.0) || !(l.tol.act > 0.0)) throw InputError("tolerances must be > 0");
  l.seed = s.seed ? *s.seed : l.pf.options.seed;
  l.ladder = s.eps.empty() ? l.pf.options.eps_ladder : parse_eps_list(s.eps);
  return l;
}

inline json envelope(const std::string& command, const Loaded& l, json result) {
  return {{"tool", "robustfo"},
          {"version", kVersion},
          {"command", command},
          {"input_sha256", l.sha256},
          {"tolerances", io::to_json(l.tol)},
          {"seed", l.seed},
          {"result", std::move(result)}};
}

// --- rendering --------------------------------------------------------------

inline std::string scalar_text(const json& j) {
  if (j.is_null()) return "";
  if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
  if (j.is_number_float()) return io::fmt17(j.get<double>());
  if (j.is_number()) return j.dump();
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

inline void flatten(const json& j, const std::string& key,
                    std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      flatten(it.value(), key.empty() ? it.key() : key + "." + it.key(), out);
    }
  } else if (j.is_array()) {
    if (j.empty()) out.emplace_back(key, "");
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], key + "." + std::to_string(i), out);
  } else {
    out.emplace_back(key, scalar_text(j));
  }
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

inline std::string kv_csv(const json& result) {
  std::vector<std::pair<std::string, std::string>> kv;
  flatten(result, "", kv);
  std::string s = "key,value\n";
  for (const auto& [k, v] : kv) s += csv_field(k) + "," + csv_field(v) + "\n";
  return s;
}

inline std::string kv_table(const json& result) {
  std::vector<std::pair<std::string, std::string>> kv;
  flatten(result, "", kv);
  std::size_t w = 0;
  for (const auto& e : kv) w = std::max(w, e.first.size());
  std::ostringstream os;
  for (const auto& [k, v] : kv) os << std::left << std::setw(static_cast<int>(w) + 2) << k << v << '\n';
  return os.str();
}

struct Output {
  std::string name;  // file stem under --out
  json doc;          // full envelope
  std::string csv;   // overrides the key/value csv when nonempty
  std::string table; // overrides the key/value table when nonempty
};

inline void emit(const Settings& s, const Output& o, std::ostream& out) {
  const json& result = o.doc.at("result");
  if (s.format == "csv") {
    out << (o.csv.empty() ? kv_csv(result) : o.csv);
  } else if (s.format == "table") {
    out << (o.table.empty() ? kv_table(result) : o.table);
  } else {
    out << o.doc.dump(2) << '\n';
  }
  if (s.out_dir.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(s.out_dir, ec);
  if (ec) throw InputError("--out: cannot create '" + s.out_dir + "': " + ec.message());
  const std::filesystem::path dir(s.out_dir);
  auto write = [&](const std::string& file, const std::string& text) {
    std::ofstream f(dir / file, std::ios::binary);
    if (!f) throw InputError("--out: cannot write '" + (dir / file).string() + "'");
    f << text;
  };
  write(o.name + ".json", o.doc.dump(2) + "\n");
  if (!o.csv.empty()) write(o.name + ".csv", o.csv);
}

// --- commands ---------------------------------------------------------------

inline TangentialOptions tangential_options(const Loaded& l) {
  TangentialOptions opt;
  opt.tol = l.tol;
  opt.seed = l.seed;
  return opt;
}

/// Nominal point: the file's xbar, or the nominal optimum.
inline std::pair<Vector, int> nominal_point(const Loaded& l, json& result) {
  if (l.pf.xbar) {
    result["xbar_source"] = "file";
    return {*l.pf.xbar, kOk};
  }
  const NominalSolution nom = solve_nominal(l.pf.program, l.tol);
  result["nominal"] = io::to_json(nom);
  result["xbar_source"] = "nominal";
  return {nom.x, exit_for(nom.status)};
}

inline int cmd_nominal(const Settings& s, std::ostream& out, std::ostream& err) {
  const Loaded l = load(s.file, s);
  const NominalSolution nom = solve_nominal(l.pf.program, l.tol);
  json r = io::to_json(nom);
  json active = json::array();
  for (std::size_t i = 0; i < nom.block_state.size(); ++i) {
    if (nom.block_state[i] != BlockState::Interior) active.push_back(i);
  }
  r["active_blocks"] = active;
  emit(s, {"nominal", envelope("nominal", l, r), "", ""}, out);
  if (nom.status != LpStatus::Optimal) err << "nominal problem is " << to_string(nom.status) << '\n';
  return exit_for(nom.status);
}

inline int cmd_tangential(const Settings& s, std::ostream& out, std::ostream& err) {
  const Loaded l = load(s.file, s);
  json r;
  const auto [xbar, code] = nominal_point(l, r);
  if (code != kOk) {
    emit(s, {"tangential", envelope("tangential", l, r), "", ""}, out);
    err << "nominal problem has no optimum\n";
    return code;
  }
  const TangentialProblem tp = build_tangential(l.pf.program, xbar, l.tol);
  const TangentialSolution ts = solve_tangential(tp, tangential_options(l));
  r["xbar"] = io::to_json(xbar);
  json roles = json::array();
  for (auto role : tp.roles) roles.push_back(to_string(role));
  r["block_roles"] = roles;
  r["solution"] = io::to_json(ts);
  emit(s, {"tangential", envelope("tangential", l, r), "", ""}, out);
  if (ts.status == LpStatus::Optimal && !ts.certificate.certified) {
    err << "warning: optimality certificate residual " << ts.certificate.residual << '\n';
  }
  if (!ts.cq_ok) err << "warning: constraint qualification margin " << ts.cq_margin << " is not positive\n";
  return exit_for(ts.status);
}

inline std::string sweep_table(const SweepReport& rep) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  auto col = [&](const std::string& v, int w) { os << std::left << std::setw(w) << v << ' '; };
  col("eps", 23);
  col("status", 16);
  col("v_eps", 23);
  col("residual", 23);
  os << "dir_err\n";
  for (const auto& row : rep.rows) {
    col(io::fmt17(row.eps), 23);
    col(to_string(row.status), 16);
    col(io::fmt17(row.value), 23);
    col(io::fmt17(row.residual), 23);
    os << io::fmt17(row.dir_err) << '\n';
  }
  os << "vtilde  " << io::fmt17(rep.vtilde) << "\nslope   " << io::fmt17(rep.slope) << "\nverdict "
     << to_string(rep.verdict) << (rep.reason.empty() ? "" : " (" + rep.reason + ")") << '\n';
  return os.str();
}

inline int cmd_validate(const Settings& s, std::ostream& out, std::ostream& err) {
  const Loaded l = load(s.file, s);
  json r;
  const auto [xbar, code] = nominal_point(l, r);
  if (code != kOk) {
    emit(s, {"sweep", envelope("validate", l, r), "", ""}, out);
    err << "nominal problem has no optimum\n";
    return code;
  }
  const TangentialProblem tp = build_tangential(l.pf.program, xbar, l.tol);
  const TangentialSolution ts = solve_tangential(tp, tangential_options(l));
  r["tangential"] = io::to_json(ts);
  if (ts.status != LpStatus::Optimal) {
    emit(s, {"sweep", envelope("validate", l, r), "", ""}, out);
    err << "tangential problem is " << to_string(ts.status) << '\n';
    return exit_for(ts.status);
  }
  SweepTolerances st;
  st.solver = l.tol;
  const SweepReport rep = sweep(l.pf.program, xbar, tp, ts, l.ladder, st);
  r["sweep"] = io::to_json(rep);
  emit(s, {"sweep", envelope("validate", l, r), io::to_csv(rep), sweep_table(rep)}, out);
  if (rep.verdict != Verdict::Pass) err << "verdict " << to_string(rep.verdict) << ": " << rep.reason << '\n';
  return rep.verdict == Verdict::Pass ? kOk : kSolveFailure;
}

inline const BlockSets& lookup_sets(const Loaded& l, const std::string& name, const char* flag) {
  if (name == "uncertainty") return l.pf.program.uncertainty;
  auto it = l.pf.sets.find(name);
  if (it != l.pf.sets.end()) return it->second;
  std::string avail = "uncertainty";
  for (const auto& [k, v] : l.pf.sets) avail += ", " + k;
  throw InputError(std::string(flag) + ": no set named '" + name + "' (available: " + avail + ")");
}

inline int cmd_calculus(const Settings& s, std::ostream& out, std::ostream& err) {
  const Loaded l = load(s.file, s);
  const BlockSets& s1 = lookup_sets(l, s.left, "--left");
  const BlockSets& s2 = lookup_sets(l, s.right, "--right");
  if (!(s.lambda1 >= 0.0) || !(s.lambda2 >= 0.0)) throw InputError("--lambda1/--lambda2 must be >= 0");
  json r;
  const auto [xbar, code] = nominal_point(l, r);
  if (code != kOk) {
    emit(s, {"calculus", envelope("calculus", l, r), "", ""}, out);
    err << "nominal problem has no optimum\n";
    return code;
  }
  const AdditionReport rep =
      addition_report(l.pf.program, xbar, s1, s2, s.lambda1, s.lambda2, tangential_options(l));
  r["left"] = s.left;
  r["right"] = s.right;
  r["xbar"] = io::to_json(xbar);
  r["report"] = io::to_json(rep);
  emit(s, {"calculus", envelope("calculus", l, r), "", ""}, out);
  if (rep.violation) err << "addition calculus violated: gap " << rep.gap << '\n';
  return rep.violation ? kSolveFailure : kOk;
}

// --- shipped examples -------------------------------------------------------

struct Check {
  std::string pointer;
  json expected;
  json actual;
  bool pass = false;
};

inline bool near(const json& want, const json& got, double tol) {
  if (want.is_array()) {
    if (!got.is_array() || got.size() != want.size()) return false;
    for (std::size_t i = 0; i < want.size(); ++i) {
      if (!near(want[i], got[i], tol)) return false;
    }
    return true;
  }
  if (!got.is_number()) return false;
  return std::abs(got.get<double>() - want.get<double>()) <= tol;
}

/// Evaluates {"pointer", "value"+"tol" | "min" | "max" | "equals"} against doc.
inline Check run_check(const json& spec, const json& doc) {
  Check c;
  c.pointer = spec.at("pointer").get<std::string>();
  c.expected = spec;
  c.expected.erase("pointer");
  const json::json_pointer ptr(c.pointer);
  if (!doc.contains(ptr)) return c;
  c.actual = doc.at(ptr);
  if (spec.contains("value")) {
    c.pass = near(spec["value"], c.actual, spec.value("tol", 1e-9));
  } else if (spec.contains("min")) {
    c.pass = c.actual.is_number() && c.actual.get<double>() > spec["min"].get<double>();
  } else if (spec.contains("max")) {
    c.pass = c.actual.is_number() && c.actual.get<double>() < spec["max"].get<double>();
  } else if (spec.contains("equals")) {
    c.pass = c.actual == spec["equals"];
  }
  return c;
}

inline json square_eg_checks(bool soc, double a, double b, double delta) {
  json checks = json::array();
  if (!soc) {
    const double vi = b / 2 + delta / 2;
    const double vs = (a + b) / 2 + delta;
    checks.push_back({{"pointer", "/calculus/v_left"}, {"value", vi}, {"tol", 1e-9}});
    checks.push_back({{"pointer", "/calculus/v_right"}, {"value", vi}, {"tol", 1e-9}});
    checks.push_back({{"pointer", "/calculus/v_sum"}, {"value", vs}, {"tol", 1e-9}});
  }
  checks.push_back({{"pointer", "/calculus/subadditive"}, {"equals", true}});
  checks.push_back({{"pointer", "/calculus/violation"}, {"equals", false}});
  return checks;
}

inline int cmd_examples(const Settings& s, std::ostream& out, std::ostream& err) {
  const auto& names = example_names();
  if (std::find(names.begin(), names.end(), s.example) == names.end()) {
    std::string avail;
    for (const auto& n : names) avail += (avail.empty() ? "" : ", ") + n;
    throw InputError("unknown example '" + s.example + "' (available: " + avail + ")");
  }
  const bool square = s.example == "square-eg" || s.example == "square-eg-soc";
  const bool custom = s.a || s.b || s.delta;
  if (custom && !square) throw InputError("--a/--b/--delta apply only to the square examples");

  const std::filesystem::path dir(s.data_dir);
  Loaded l = load((dir / (s.example + ".json")).string(), s);
  json expected;
  {
    const std::string path = (dir / "expected" / (s.example + ".json")).string();
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot read '" + path + "'");
    try {
      expected = json::parse(f);
    } catch (const json::parse_error& e) {
      throw InputError(path + ": " + e.what());
    }
  }
  json checks = expected.at("checks");

  json r;
  r["example"] = s.example;
  if (square) {
    const double a = s.a.value_or(1.0), b = s.b.value_or(2.0), delta = s.delta.value_or(0.5);
    if (!(a >= 0.0) || !(b >= 0.0) || !(delta >= 0.0) || !(a <= b)) {
      throw InputError("square example needs 0 <= a <= b and delta >= 0");
    }
    r["parameters"] = {{"a", a}, {"b", b}, {"delta", delta}};
    if (custom) {
      const bool soc = s.example == "square-eg-soc";
      l.pf.sets["S1"] = soc ? golden::square_eg_soc_s1(a, b, delta) : golden::square_eg_s1(a, b, delta);
      l.pf.sets["S2"] = soc ? golden::square_eg_soc_s2(a, b, delta) : golden::square_eg_s2(a, b, delta);
      l.pf.program.uncertainty = l.pf.sets["S1"];
      checks = square_eg_checks(soc, a, b, delta);
    }
  }

  const ConicProgram& p = l.pf.program;
  const NominalSolution nom = solve_nominal(p, l.tol);
  r["nominal"] = io::to_json(nom);
  if (nom.status != LpStatus::Optimal) {
    emit(s, {"examples-" + s.example, envelope("examples", l, r), "", ""}, out);
    err << "nominal problem is " << to_string(nom.status) << '\n';
    return exit_for(nom.status);
  }
  const Vector xbar = l.pf.xbar ? *l.pf.xbar : nom.x;
  const TangentialOptions opt = tangential_options(l);

  std::vector<std::pair<std::string, BlockSets>> runs{{"uncertainty", p.uncertainty}};
  const auto s1 = l.pf.sets.find("S1");
  const auto s2 = l.pf.sets.find("S2");
  const bool pair = s1 != l.pf.sets.end() && s2 != l.pf.sets.end();
  if (pair) {
    runs.emplace_back("S1", s1->second);
    runs.emplace_back("S2", s2->second);
    runs.emplace_back("S1+S2", sum_sets(s1->second, s2->second));
  }
  json tang;
  for (const auto& [name, sets] : runs) {
    tang[name] = io::to_json(tangential_with(p, xbar, sets, opt));
  }
  r["tangential"] = tang;
  if (pair) r["calculus"] = io::to_json(addition_report(p, xbar, s1->second, s2->second, 1.0, 1.0, opt));

  bool needs_sweep = false;
  for (const auto& c : checks) needs_sweep = needs_sweep || c.at("pointer").get<std::string>().rfind("/sweep", 0) == 0;
  if (needs_sweep) {
    const TangentialProblem tp = build_tangential(p, xbar, l.tol);
    const TangentialSolution ts = solve_tangential(tp, opt);
    if (ts.status == LpStatus::Optimal) {
      SweepTolerances st;
      st.solver = l.tol;
      r["sweep"] = io::to_json(sweep(p, xbar, tp, ts, l.ladder, st));
    }
  }

  json results = json::array();
  bool all = true;
  std::ostringstream table;
  for (const auto& spec : checks) {
    const Check c = run_check(spec, r);
    all = all && c.pass;
    results.push_back({{"pointer", c.pointer}, {"expected", c.expected}, {"actual", c.actual}, {"pass", c.pass}});
    table << (c.pass ? "PASS " : "FAIL ") << c.pointer << "  actual=" << scalar_text(c.actual)
          << "  expected=" << c.expected.dump() << '\n';
  }
  r["checks"] = results;
  r["status"] = all ? "PASS" : "FAIL";
  table << s.example << ": " << (all ? "PASS" : "FAIL") << '\n';
  emit(s, {"examples-" + s.example, envelope("examples", l, r), "", table.str()}, out);
  if (!all) err << s.example << ": expected values not reproduced\n";
  return all ? kOk : kSolveFailure;
}

// --- entry point ------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  Settings s;
  CLI::App app{"First-order approximation of robust linear and second-order-cone programs", "robustfo"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--eps", s.eps, "Comma-separated eps ladder for validate");
  app.add_option("--tol-feas", s.tol_feas, "Feasibility tolerance")->check(CLI::PositiveNumber);
  app.add_option("--tol-act", s.tol_act, "Active-set tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", s.seed, "Seed for randomized probes");
  app.add_option("--format", s.format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));
  app.add_option("--out", s.out_dir, "Also write outputs into this directory");

  auto* nominal = app.add_subcommand("nominal", "Solve the nominal problem");
  nominal->add_option("file", s.file, "Problem file")->required();
  auto* tangential = app.add_subcommand("tangential", "Solve the tangential problem at the nominal optimum");
  tangential->add_option("file", s.file, "Problem file")->required();
  auto* validate = app.add_subcommand("validate", "Compare the first-order prediction with exact robust solves");
  validate->add_option("file", s.file, "Problem file")->required();
  auto* calculus = app.add_subcommand("calculus", "Addition report for two named uncertainty sets");
  calculus->alias("calculus-check");
  calculus->add_option("file", s.file, "Problem file")->required();
  calculus->add_option("--left", s.left, "First set name")->required();
  calculus->add_option("--right", s.right, "Second set name")->required();
  calculus->add_option("--lambda1", s.lambda1, "Weight of the first set");
  calculus->add_option("--lambda2", s.lambda2, "Weight of the second set");
  auto* examples = app.add_subcommand("examples", "Run a shipped example and diff against expected values");
  examples->add_option("name", s.example, "degen | square-eg | square-eg-soc | socp-walkthrough")->required();
  examples->add_option("--a", s.a, "Square example parameter a");
  examples->add_option("--b", s.b, "Square example parameter b");
  examples->add_option("--delta", s.delta, "Square example parameter delta");
  examples->add_option("--data-dir", s.data_dir, "Directory holding the shipped examples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (nominal->parsed()) return cmd_nominal(s, out, err);
    if (tangential->parsed()) return cmd_tangential(s, out, err);
    if (validate->parsed()) return cmd_validate(s, out, err);
    if (calculus->parsed()) return cmd_calculus(s, out, err);
    if (examples->parsed()) return cmd_examples(s, out, err);
  } catch (const io::SchemaError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const SolveError& e) {
    err << "solve error: " << e.what() << '\n';
    return exit_for(e.status);
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::domain_error& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kInputError;
}

}  // namespace robustfo::cli
