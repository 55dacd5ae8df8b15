/**
 * Copyright 2026, the qct developers.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */
#include "qct/smt.hpp"

#include <unistd.h>

#include <algorithm>
#include <set>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "qct/error.hpp"
#include "qct/subprocess.hpp"

namespace qct {

std::string smt_real(double value) {
  if (!std::isfinite(value)) throw Error("non-finite SMT literal");
  if (value < 0.0 || (value == 0.0 && std::signbit(value))) {
    return "(- " + smt_real(-value) + ")";
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  std::string s = buf;
  if (s.find('e') == std::string::npos && s.find('E') == std::string::npos) {
    if (s.find('.') == std::string::npos) s += ".0";
    return s;
  }
  // SMT-LIB decimals have no exponent form; expand to plain decimal while
  // keeping 17 significant digits.
  const int exp10 = static_cast<int>(std::floor(std::log10(value)));
  int prec = 16 - exp10;
  if (prec < 0) prec = 0;
  if (prec > 400) prec = 400;
  std::string t(static_cast<std::size_t>(prec) + 64, '\0');
  std::snprintf(t.data(), t.size(), "%.*f", prec, value);
  t.resize(std::strlen(t.c_str()));
  if (t.find('.') == std::string::npos) t += ".0";
  return t;
}

namespace {

std::string var_name(int step, std::size_t idx, bool real) {
  return "psi_" + std::to_string(step) + "_" + std::to_string(idx) +
         (real ? ".r" : ".i");
}

std::string fin_name(int len, std::size_t idx, bool real) {
  return "fin_" + std::to_string(len) + "_" + std::to_string(idx) +
         (real ? ".r" : ".i");
}

/// Amplitude reference for a given prefix length under the chosen mode.
std::string amp_ref(SmtMode mode, int len, std::size_t idx, bool real) {
  if (len == 0) return var_name(0, idx, real);
  if (mode == SmtMode::PerOp) return var_name(len, idx, real);
  return fin_name(len, idx, real);
}

std::string sum_expr(const std::vector<std::string>& terms) {
  if (terms.empty()) return "0.0";
  if (terms.size() == 1) return terms.front();
  std::string out = "(+";
  for (const std::string& t : terms) {
    out += ' ';
    out += t;
  }
  out += ')';
  return out;
}

void push_term(std::vector<std::string>& terms, double coeff,
               const std::string& var) {
  if (coeff == 0.0) return;
  terms.push_back("(* " + smt_real(coeff) + " " + var + ")");
}

std::string prob_expr(SmtMode mode, int len, std::size_t idx) {
  return "(+ (^ " + amp_ref(mode, len, idx, true) + " 2.0) (^ " +
         amp_ref(mode, len, idx, false) + " 2.0))";
}

bool same_op(const GateOp& a, const GateOp& b) {
  return a.gate == b.gate && a.qubits == b.qubits && a.angles == b.angles;
}

std::string render_expr_smt(const ClassicalExpr& e,
                            const ClassicalPayload& payload) {
  using K = ClassicalExpr::Kind;
  switch (e.kind) {
    case K::IntLit:
      return smt_real(static_cast<double>(e.int_value));
    case K::RealLit:
      return smt_real(e.real_value);
    case K::Name: {
      auto it = payload.symbols.find(e.name);
      if (it == payload.symbols.end()) {
        throw UnboundSymbolError("no symbol bound for '" + e.name + "'");
      }
      return it->second;
    }
    case K::Neg:
      return "(- " + render_expr_smt(*e.lhs, payload) + ")";
    case K::Add:
      return "(+ " + render_expr_smt(*e.lhs, payload) + " " +
             render_expr_smt(*e.rhs, payload) + ")";
    case K::Sub:
      return "(- " + render_expr_smt(*e.lhs, payload) + " " +
             render_expr_smt(*e.rhs, payload) + ")";
    case K::Mul:
      return "(* " + render_expr_smt(*e.lhs, payload) + " " +
             render_expr_smt(*e.rhs, payload) + ")";
  }
  throw Error("malformed expression");
}

void emit_classical(const Atom& atom, SmtDocument& doc) {
  const auto& c = std::get<ClassicalPayload>(atom.payload);
  const std::string lhs = render_expr_smt(*c.lhs, c);
  const std::string rhs = render_expr_smt(*c.rhs, c);
  std::string body;
  if (c.int_context) {
    // Gap encoding over integer-typed operands: strict relations move to
    // the next representable integer, so interval midpoints that round to
    // an int stay inside the atom.
    switch (c.cmp) {
      case Comparator::Eq:
        body = "(= " + lhs + " " + rhs + ")";
        break;
      case Comparator::Ne:
        body = "(or (<= " + lhs + " (- " + rhs + " 1.0)) (>= " + lhs +
               " (+ " + rhs + " 1.0)))";
        break;
      case Comparator::Lt:
        body = "(<= " + lhs + " (- " + rhs + " 1.0))";
        break;
      case Comparator::Le:
        body = "(<= " + lhs + " " + rhs + ")";
        break;
      case Comparator::Gt:
        body = "(>= " + lhs + " (+ " + rhs + " 1.0))";
        break;
      case Comparator::Ge:
        body = "(>= " + lhs + " " + rhs + ")";
        break;
    }
  } else {
    switch (c.cmp) {
      case Comparator::Eq:
        body = "(= " + lhs + " " + rhs + ")";
        break;
      case Comparator::Ne:
        body = "(or (< " + lhs + " " + rhs + ") (> " + lhs + " " + rhs + "))";
        break;
      case Comparator::Lt:
        body = "(< " + lhs + " " + rhs + ")";
        break;
      case Comparator::Le:
        body = "(<= " + lhs + " " + rhs + ")";
        break;
      case Comparator::Gt:
        body = "(> " + lhs + " " + rhs + ")";
        break;
      case Comparator::Ge:
        body = "(>= " + lhs + " " + rhs + ")";
        break;
    }
  }
  doc.condition_lines.push_back("(assert " + body + ")");
}

void emit_quantum(const Atom& atom, SmtDocument& doc) {
  const int len = static_cast<int>(atom.prefix_ops.size());
  const std::size_t dim = std::size_t{1} << doc.num_qubits;
  switch (atom.kind) {
    case AtomKind::MeasureIn:
    case AtomKind::MeasureNotIn: {
      const auto& m = std::get<MeasurePayload>(atom.payload);
      const auto zeroed =
          measure_zero_indices(doc.num_qubits, m.qubits, m.outcomes,
                               atom.kind == AtomKind::MeasureIn);
      for (std::size_t x : zeroed) {
        doc.condition_lines.push_back(
            "(assert (= " + amp_ref(doc.mode, len, x, true) + " 0.0))");
        doc.condition_lines.push_back(
            "(assert (= " + amp_ref(doc.mode, len, x, false) + " 0.0))");
      }
      break;
    }
    case AtomKind::DistEq: {
      const auto& d = std::get<DistPayload>(atom.payload);
      for (std::size_t a = 0; a < dim; ++a) {
        const std::string prob = prob_expr(doc.mode, len, a);
        const std::string target = smt_real(d.dist[a]);
        const std::string delta = smt_real(d.delta);
        doc.condition_lines.push_back("(assert (< (- " + prob + " " + target +
                                      ") " + delta + "))");
        doc.condition_lines.push_back("(assert (< (- " + target + " " + prob +
                                      ") " + delta + "))");
      }
      break;
    }
    case AtomKind::DistNeq: {
      const auto& d = std::get<DistPayload>(atom.payload);
      std::string body = "(or";
      for (std::size_t a = 0; a < dim; ++a) {
        const std::string prob = prob_expr(doc.mode, len, a);
        const std::string target = smt_real(d.dist[a]);
        const std::string delta = smt_real(d.delta);
        body += " (>= (- " + prob + " " + target + ") " + delta + ")";
        body += " (>= (- " + target + " " + prob + ") " + delta + ")";
      }
      body += ')';
      doc.condition_lines.push_back("(assert " + body + ")");
      break;
    }
    case AtomKind::ProbGt: {
      const auto& pb = std::get<ProbPayload>(atom.payload);
      for (const ProbBound& b : pb.bounds) {
        doc.condition_lines.push_back(
            "(assert (> " + prob_expr(doc.mode, len, b.outcome) + " " +
            smt_real(b.probability - pb.delta) + "))");
      }
      break;
    }
    case AtomKind::ProbLe: {
      const auto& pb = std::get<ProbPayload>(atom.payload);
      for (const ProbBound& b : pb.bounds) {
        doc.condition_lines.push_back(
            "(assert (<= " + prob_expr(doc.mode, len, b.outcome) + " " +
            smt_real(b.probability + pb.delta) + "))");
      }
      break;
    }
    case AtomKind::ClassicalCmp:
      break;
  }
}

}  // namespace

SmtDocument emit_smt(const PathConstraint& pc, int num_qubits, SmtMode mode,
                     bool set_logic) {
  SmtDocument doc;
  doc.num_qubits = num_qubits;
  doc.mode = mode;
  doc.set_logic = set_logic;
  const std::size_t dim = std::size_t{1} << num_qubits;

  for (std::size_t x = 0; x < dim; ++x) {
    doc.initial_vars.push_back(var_name(0, x, true));
    doc.initial_vars.push_back(var_name(0, x, false));
  }

  // The longest quantum prefix; every other quantum prefix must be a prefix
  // of it (all atoms come from one path).
  const std::vector<GateOp>* longest = nullptr;
  for (const Atom& atom : pc.atoms) {
    if (atom.kind == AtomKind::ClassicalCmp) continue;
    if (longest == nullptr || atom.prefix_ops.size() > longest->size()) {
      longest = &atom.prefix_ops;
    }
  }
  std::vector<int> lens;
  for (const Atom& atom : pc.atoms) {
    if (atom.kind == AtomKind::ClassicalCmp) continue;
    for (std::size_t k = 0; k < atom.prefix_ops.size(); ++k) {
      if (!same_op(atom.prefix_ops[k], (*longest)[k])) {
        throw std::logic_error("atom prefixes are not nested");
      }
    }
    const int len = static_cast<int>(atom.prefix_ops.size());
    if (len > 0 && std::find(lens.begin(), lens.end(), len) == lens.end()) {
      lens.push_back(len);
    }
  }
  std::sort(lens.begin(), lens.end());

  for (const Atom& atom : pc.atoms) {
    if (atom.kind != AtomKind::ClassicalCmp) continue;
    const auto& payload = std::get<ClassicalPayload>(atom.payload);
    for (const auto& [param, symbol] : payload.symbols) {
      if (std::find(doc.classical_vars.begin(), doc.classical_vars.end(),
                    symbol) == doc.classical_vars.end()) {
        doc.classical_vars.push_back(symbol);
      }
    }
  }

  {
    std::string norm = "(assert (= (+";
    for (std::size_t x = 0; x < dim; ++x) {
      norm += " (^ " + var_name(0, x, true) + " 2.0)";
      norm += " (^ " + var_name(0, x, false) + " 2.0)";
    }
    norm += ") 1.0))";
    doc.normalization_line = norm;
  }

  if (mode == SmtMode::PerOp) {
    const int total = longest ? static_cast<int>(longest->size()) : 0;
    for (int k = 1; k <= total; ++k) {
      for (std::size_t x = 0; x < dim; ++x) {
        doc.step_vars.push_back(var_name(k, x, true));
        doc.step_vars.push_back(var_name(k, x, false));
      }
    }
    for (int k = 1; k <= total; ++k) {
      const UnitaryMatrix u = embed_gate((*longest)[k - 1], num_qubits);
      for (std::size_t x = 0; x < dim; ++x) {
        std::vector<std::string> re;
        std::vector<std::string> im;
        for (std::size_t j = 0; j < dim; ++j) {
          const Complex c = u.at(x, j);
          push_term(re, c.real(), var_name(k - 1, j, true));
          push_term(re, -c.imag(), var_name(k - 1, j, false));
          push_term(im, c.imag(), var_name(k - 1, j, true));
          push_term(im, c.real(), var_name(k - 1, j, false));
        }
        doc.operation_lines.push_back("(assert (= " + var_name(k, x, true) +
                                      " " + sum_expr(re) + "))");
        doc.operation_lines.push_back("(assert (= " + var_name(k, x, false) +
                                      " " + sum_expr(im) + "))");
      }
    }
  } else {
    // One define-fun block per distinct nonzero prefix length, built from
    // the integrated amplitude expressions.
    for (int len : lens) {
      const AmplitudeExprs* exprs = nullptr;
      for (const Atom& atom : pc.atoms) {
        if (atom.kind != AtomKind::ClassicalCmp &&
            static_cast<int>(atom.prefix_ops.size()) == len) {
          exprs = &atom.exprs;
          break;
        }
      }
      for (std::size_t x = 0; x < dim; ++x) {
        std::vector<std::string> re;
        std::vector<std::string> im;
        for (std::size_t j = 0; j < dim; ++j) {
          push_term(re, exprs->a_at(x, j), var_name(0, j, true));
          push_term(re, -exprs->b_at(x, j), var_name(0, j, false));
          push_term(im, exprs->b_at(x, j), var_name(0, j, true));
          push_term(im, exprs->a_at(x, j), var_name(0, j, false));
        }
        doc.operation_lines.push_back("(define-fun " + fin_name(len, x, true) +
                                      " () Real " + sum_expr(re) + ")");
        doc.operation_lines.push_back(
            "(define-fun " + fin_name(len, x, false) + " () Real " +
            sum_expr(im) + ")");
      }
    }
  }

  for (const Atom& atom : pc.atoms) {
    if (atom.kind == AtomKind::ClassicalCmp) {
      emit_classical(atom, doc);
    } else {
      emit_quantum(atom, doc);
    }
  }
  return doc;
}

std::vector<std::string> SmtDocument::declared_vars() const {
  std::vector<std::string> out = initial_vars;
  out.insert(out.end(), step_vars.begin(), step_vars.end());
  out.insert(out.end(), classical_vars.begin(), classical_vars.end());
  return out;
}

std::string SmtDocument::serialize() const {
  std::string s;
  if (set_logic) s += "(set-logic QF_NRA)\n";
  s += "; -- variables --\n";
  for (const std::string& v : initial_vars) {
    s += "(declare-fun " + v + " () Real)\n";
  }
  for (const std::string& v : step_vars) {
    s += "(declare-fun " + v + " () Real)\n";
  }
  for (const std::string& v : classical_vars) {
    s += "(declare-fun " + v + " () Real)\n";
  }
  s += "; -- normalization --\n";
  s += normalization_line + "\n";
  s += "; -- operations --\n";
  for (const std::string& line : operation_lines) s += line + "\n";
  s += "; -- path condition --\n";
  for (const std::string& line : condition_lines) s += line + "\n";
  if (!exclusion_lines.empty()) {
    s += "; exclusions\n";
    for (const std::string& line : exclusion_lines) s += line + "\n";
  }
  s += "; -- commands --\n";
  s += "(check-sat)\n";
  s += "(get-model)\n";
  return s;
}

namespace {

struct SExpr {
  std::string token;           // nonempty for leaves
  std::vector<SExpr> children;  // for lists
  bool is_list = false;
};

struct SExprParser {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size()) {
      if (std::isspace(static_cast<unsigned char>(text[pos]))) {
        ++pos;
      } else if (text[pos] == ';') {
        while (pos < text.size() && text[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
  }

  bool done() {
    skip_ws();
    return pos >= text.size();
  }

  SExpr parse() {
    skip_ws();
    if (pos >= text.size()) throw ModelParseError("unexpected end of model");
    if (text[pos] == '(') {
      ++pos;
      SExpr list;
      list.is_list = true;
      for (;;) {
        skip_ws();
        if (pos >= text.size()) {
          throw ModelParseError("unbalanced parenthesis in model");
        }
        if (text[pos] == ')') {
          ++pos;
          return list;
        }
        list.children.push_back(parse());
      }
    }
    if (text[pos] == '"') {
      const std::size_t start = pos++;
      while (pos < text.size() && text[pos] != '"') ++pos;
      if (pos < text.size()) ++pos;
      SExpr leaf;
      leaf.token = std::string(text.substr(start, pos - start));
      return leaf;
    }
    const std::size_t start = pos;
    while (pos < text.size() && text[pos] != '(' && text[pos] != ')' &&
           !std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
    SExpr leaf;
    leaf.token = std::string(text.substr(start, pos - start));
    return leaf;
  }
};

double parse_number_token(std::string token) {
  // dReal and z3's decimal printer mark truncated values with '?'.
  if (!token.empty() && token.back() == '?') token.pop_back();
  if (token.empty()) throw ModelParseError("empty numeric token");
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end == nullptr || *end != '\0') {
    throw ModelParseError("unparseable numeric token '" + token + "'");
  }
  return v;
}

double eval_value(const SExpr& e) {
  if (!e.is_list) return parse_number_token(e.token);
  if (e.children.empty()) throw ModelParseError("empty value form");
  const std::string& head = e.children.front().token;
  if (head == "-") {
    if (e.children.size() == 2) return -eval_value(e.children[1]);
    if (e.children.size() == 3) {
      return eval_value(e.children[1]) - eval_value(e.children[2]);
    }
  } else if (head == "+") {
    double acc = 0.0;
    for (std::size_t i = 1; i < e.children.size(); ++i) {
      acc += eval_value(e.children[i]);
    }
    return acc;
  } else if (head == "*") {
    double acc = 1.0;
    for (std::size_t i = 1; i < e.children.size(); ++i) {
      acc *= eval_value(e.children[i]);
    }
    return acc;
  } else if (head == "/" && e.children.size() == 3) {
    return eval_value(e.children[1]) / eval_value(e.children[2]);
  }
  throw ModelParseError("unsupported model value form '" + head +
                        "' (algebraic values need the decimal printer)");
}

/// Only the declared variables are read off; the solver may echo back the
/// script's own define-funs, whose bodies are not closed forms.
void collect_define_funs(const SExpr& e,
                         const std::set<std::string>& declared,
                         Assignment& out) {
  if (!e.is_list) return;
  if (e.children.size() >= 5 && !e.children[0].is_list &&
      e.children[0].token == "define-fun" && !e.children[1].is_list) {
    const std::string& name = e.children[1].token;
    if (declared.count(name) != 0) {
      const double v = eval_value(e.children[4]);
      out[name] = Interval{v, v};
    }
    return;
  }
  for (const SExpr& child : e.children) {
    collect_define_funs(child, declared, out);
  }
}

std::string trim(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

/// "name : [lo, hi]" (dReal interval line). Also accepts "[v]" and
/// "[ENTIRE]".
bool parse_interval_line(const std::string& line, std::string& name,
                         Interval& out) {
  const std::size_t colon = line.find(':');
  if (colon == std::string::npos) return false;
  name = trim(line.substr(0, colon));
  if (name.empty() || name.find(' ') != std::string::npos) return false;
  std::string rest = trim(line.substr(colon + 1));
  if (rest.empty() || rest.front() != '[') return false;
  const std::size_t close = rest.find(']');
  if (close == std::string::npos) return false;
  std::string inner = trim(rest.substr(1, close - 1));
  if (inner == "ENTIRE" || inner == "entire") {
    out = Interval{0.0, 0.0};
    return true;
  }
  const std::size_t comma = inner.find(',');
  if (comma == std::string::npos) {
    const double v = parse_number_token(trim(inner));
    out = Interval{v, v};
    return true;
  }
  const double lo = parse_number_token(trim(inner.substr(0, comma)));
  const double hi = parse_number_token(trim(inner.substr(comma + 1)));
  out = Interval{lo, hi};
  return true;
}

}  // namespace

std::pair<SolverVerdict, Assignment> parse_model(
    const std::string& output, const std::vector<std::string>& declared) {
  // Locate the verdict line.
  std::vector<std::string> lines;
  {
    std::size_t pos = 0;
    while (pos <= output.size()) {
      const std::size_t next = output.find('\n', pos);
      lines.push_back(output.substr(
          pos, next == std::string::npos ? next : next - pos));
      if (next == std::string::npos) break;
      pos = next + 1;
    }
  }
  SolverVerdict verdict = SolverVerdict::Timeout;
  std::size_t verdict_line = lines.size();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string t = trim(lines[i]);
    if (t == "sat") {
      verdict = SolverVerdict::Sat;
      verdict_line = i;
      break;
    }
    if (t.rfind("delta-sat", 0) == 0) {
      verdict = SolverVerdict::DeltaSat;
      verdict_line = i;
      break;
    }
    if (t == "unsat") {
      verdict = SolverVerdict::Unsat;
      verdict_line = i;
      break;
    }
    if (t == "unknown" || t == "timeout") {
      verdict = SolverVerdict::Timeout;
      verdict_line = i;
      break;
    }
  }
  if (verdict_line == lines.size()) {
    std::string excerpt = trim(output).substr(0, 200);
    throw SolverError("unrecognized solver output: '" + excerpt + "'");
  }
  Assignment assignment;
  if (verdict == SolverVerdict::Unsat || verdict == SolverVerdict::Timeout) {
    return {verdict, assignment};
  }

  std::string body;
  for (std::size_t i = verdict_line + 1; i < lines.size(); ++i) {
    body += lines[i];
    body += '\n';
  }
  if (body.find("define-fun") != std::string::npos) {
    const std::set<std::string> names(declared.begin(), declared.end());
    SExprParser parser{body, 0};
    while (!parser.done()) {
      const SExpr e = parser.parse();
      collect_define_funs(e, names, assignment);
    }
  } else {
    for (std::size_t i = verdict_line + 1; i < lines.size(); ++i) {
      const std::string line = trim(lines[i]);
      if (line.empty()) continue;
      if (line == "Solution:" || line.rfind("delta-sat", 0) == 0) continue;
      std::string name;
      Interval interval;
      if (!parse_interval_line(line, name, interval)) {
        throw ModelParseError("unparseable model line: '" + line + "'");
      }
      assignment[name] = interval;
    }
  }
  for (const std::string& v : declared) {
    if (assignment.find(v) == assignment.end()) {
      assignment[v] = Interval{0.0, 0.0};
    }
  }
  return {verdict, assignment};
}

std::string resolve_solver_command(const std::string& shim_hint) {
  if (const char* env = std::getenv("QCT_SOLVER_CMD")) {
    if (*env != '\0') return env;
  }
  if (!find_executable("dreal").empty()) {
    return "dreal --precision {delta} --model {file}";
  }
  if (!find_executable("z3").empty()) {
    return "z3 -smt2 pp.decimal=true pp.decimal_precision=17 {file}";
  }
  if (!shim_hint.empty() && access(shim_hint.c_str(), R_OK) == 0 &&
      !find_executable("node").empty()) {
    return "node " + shim_hint + " {file}";
  }
  throw SolverError(
      "no SMT solver found: set QCT_SOLVER_CMD, or install dreal or z3");
}

namespace {

std::string expand_template(const std::string& tmpl, const std::string& file,
                            double delta) {
  std::string out = tmpl;
  const auto replace_all = [&out](const std::string& needle,
                                  const std::string& value) {
    std::size_t pos = 0;
    while ((pos = out.find(needle, pos)) != std::string::npos) {
      out.replace(pos, needle.size(), value);
      pos += value.size();
    }
  };
  replace_all("{file}", file);
  replace_all("{delta}", format_double(delta));
  return out;
}

}  // namespace

SolveResult invoke_solver(const SmtDocument& doc, const SolverConfig& config) {
  const std::string command_template =
      config.command.empty() ? resolve_solver_command() : config.command;

  std::string path = config.keep_file;
  bool temp = false;
  if (path.empty()) {
    char name[] = "/tmp/qct_XXXXXX.smt2";
    const int fd = mkstemps(name, 5);
    if (fd < 0) throw SolverError("cannot create temporary script");
    close(fd);
    path = name;
    temp = true;
  }
  {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw SolverError("cannot write solver script to " + path);
    out << doc.serialize();
  }
  const std::string command =
      expand_template(command_template, path, config.delta_sat);
  ProcessResult pr = run_process(command, config.timeout_seconds);
  if (temp) unlink(path.c_str());

  SolveResult result;
  result.seconds = pr.seconds;
  result.raw_output = pr.out;
  if (pr.timed_out) {
    result.verdict = SolverVerdict::Timeout;
    return result;
  }
  try {
    auto [verdict, assignment] = parse_model(pr.out, doc.declared_vars());
    result.verdict = verdict;
    result.assignment = std::move(assignment);
  } catch (const SolverError&) {
    std::string detail = trim(pr.err).substr(0, 200);
    if (detail.empty()) detail = trim(pr.out).substr(0, 200);
    throw SolverError("solver command failed (exit " +
                      std::to_string(pr.exit_code) + "): " + detail);
  }
  return result;
}

TestCase extract_test_case(const Assignment& assignment, const Program& p) {
  const int n = p.num_qubits();
  const std::size_t dim = std::size_t{1} << n;
  const auto value_of = [&assignment](const std::string& name) {
    auto it = assignment.find(name);
    return it == assignment.end() ? 0.0 : it->second.mid();
  };
  StateVector state;
  state.num_qubits = n;
  state.amps.resize(dim);
  for (std::size_t x = 0; x < dim; ++x) {
    state.amps[x] = Complex{value_of(var_name(0, x, true)),
                            value_of(var_name(0, x, false))};
  }
  const double norm = state.norm();
  if (norm < 1e-6) {
    throw DegenerateModelError(
        "model state norm " + format_double(norm) +
        " is too small to renormalize");
  }
  for (Complex& a : state.amps) a /= norm;

  TestCase tc;
  tc.initial_state = std::move(state);
  for (const Param& param : p.params) {
    if (param.kind == ParamKind::QReg) continue;
    const double v = value_of(param.name + "_0");
    if (param.kind == ParamKind::ClassicalInt) {
      tc.classical[param.name] = static_cast<std::int64_t>(std::llround(v));
    } else {
      tc.classical[param.name] = v;
    }
  }
  return tc;
}

bool add_exclusion(SmtDocument& doc, const Assignment& assignment) {
  if (assignment.empty()) return false;
  std::string body = "(assert (or";
  for (const std::string& v : doc.initial_vars) {
    auto it = assignment.find(v);
    const Interval interval =
        it == assignment.end() ? Interval{0.0, 0.0} : it->second;
    body += " (< " + v + " " + smt_real(interval.lo) + ")";
    body += " (> " + v + " " + smt_real(interval.hi) + ")";
  }
  body += "))";
  doc.exclusion_lines.push_back(body);
  return true;
}

bool boxes_intersect(const Assignment& a, const Assignment& b,
                     const std::vector<std::string>& vars) {
  const auto get = [](const Assignment& m, const std::string& v) {
    auto it = m.find(v);
    return it == m.end() ? Interval{0.0, 0.0} : it->second;
  };
  for (const std::string& v : vars) {
    const Interval ia = get(a, v);
    const Interval ib = get(b, v);
    if (ia.hi < ib.lo || ib.hi < ia.lo) return false;
  }
  return true;
}

}  // namespace qct
