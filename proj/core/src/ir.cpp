/**
 * Copyright 2026, the qct developers.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */
#include "qct/ir.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qct/error.hpp"

namespace qct {

ClassicalExprPtr ClassicalExpr::int_lit(std::int64_t v) {
  auto e = std::make_shared<ClassicalExpr>();
  e->kind = Kind::IntLit;
  e->int_value = v;
  return e;
}

ClassicalExprPtr ClassicalExpr::real_lit(double v) {
  auto e = std::make_shared<ClassicalExpr>();
  e->kind = Kind::RealLit;
  e->real_value = v;
  return e;
}

ClassicalExprPtr ClassicalExpr::make_name(std::string n) {
  auto e = std::make_shared<ClassicalExpr>();
  e->kind = Kind::Name;
  e->name = std::move(n);
  return e;
}

ClassicalExprPtr ClassicalExpr::neg(ClassicalExprPtr operand) {
  auto e = std::make_shared<ClassicalExpr>();
  e->kind = Kind::Neg;
  e->lhs = std::move(operand);
  return e;
}

ClassicalExprPtr ClassicalExpr::binary(Kind k, ClassicalExprPtr l,
                                       ClassicalExprPtr r) {
  auto e = std::make_shared<ClassicalExpr>();
  e->kind = k;
  e->lhs = std::move(l);
  e->rhs = std::move(r);
  return e;
}

std::string_view comparator_token(Comparator c) {
  switch (c) {
    case Comparator::Eq: return "==";
    case Comparator::Ne: return "!=";
    case Comparator::Lt: return "<";
    case Comparator::Le: return "<=";
    case Comparator::Gt: return ">";
    case Comparator::Ge: return ">=";
  }
  return "";
}

Comparator negate_comparator(Comparator c) {
  switch (c) {
    case Comparator::Eq: return Comparator::Ne;
    case Comparator::Ne: return Comparator::Eq;
    case Comparator::Lt: return Comparator::Ge;
    case Comparator::Ge: return Comparator::Lt;
    case Comparator::Le: return Comparator::Gt;
    case Comparator::Gt: return Comparator::Le;
  }
  return c;
}

int Program::num_qubits() const {
  const Param* q = qreg_param();
  return q ? q->qubits : 0;
}

const Param* Program::qreg_param() const {
  for (const auto& p : params) {
    if (p.kind == ParamKind::QReg) return &p;
  }
  return nullptr;
}

const Param* Program::find_param(std::string_view name) const {
  for (const auto& p : params) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

std::string outcome_bits(std::size_t value, int width) {
  std::string out(static_cast<std::size_t>(width), '0');
  for (int i = 0; i < width; ++i) {
    if ((value >> i) & 1) out[static_cast<std::size_t>(i)] = '1';
  }
  return out;
}

std::size_t parse_outcome_bits(std::string_view bits, int width) {
  if (width >= 0 && static_cast<int>(bits.size()) != width) {
    throw ValidationError("outcome \"" + std::string(bits) + "\" must have " +
                          std::to_string(width) + " bit(s)");
  }
  if (bits.empty() || bits.size() > 63) {
    throw ValidationError("outcome bitstring length out of range");
  }
  std::size_t value = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      value |= std::size_t{1} << i;
    } else if (bits[i] != '0') {
      throw ValidationError("outcome \"" + std::string(bits) +
                            "\" contains a non-binary character");
    }
  }
  return value;
}

namespace {

void walk_sites(Block& block, int& next_id, std::vector<BranchSite>& out) {
  for (Stmt& s : block) {
    if (auto* br = std::get_if<IfStmt>(&s.node)) {
      br->site_id = next_id++;
      out.push_back(BranchSite{br->site_id, br->span});
      walk_sites(br->then_block, next_id, out);
      walk_sites(br->else_block, next_id, out);
    }
  }
}

const IfStmt* find_in_block(const Block& block, int site_id) {
  for (const Stmt& s : block) {
    if (const auto* br = std::get_if<IfStmt>(&s.node)) {
      if (br->site_id == site_id) return br;
      if (const IfStmt* hit = find_in_block(br->then_block, site_id))
        return hit;
      if (const IfStmt* hit = find_in_block(br->else_block, site_id))
        return hit;
    }
  }
  return nullptr;
}

}  // namespace

void assign_branch_sites(Program& p) {
  int next_id = 0;
  std::vector<BranchSite> sites;
  walk_sites(p.body, next_id, sites);
}

std::vector<BranchSite> list_branches(const Program& p) {
  // Recompute on a copy so the const program is untouched; ids depend only
  // on structure, so this matches what assign_branch_sites stored.
  Program copy = p;
  int next_id = 0;
  std::vector<BranchSite> sites;
  walk_sites(copy.body, next_id, sites);
  return sites;
}

const IfStmt* find_branch(const Program& p, int site_id) {
  return find_in_block(p.body, site_id);
}

bool expr_is_int(const ClassicalExpr& e, const Program& p) {
  switch (e.kind) {
    case ClassicalExpr::Kind::IntLit:
      return true;
    case ClassicalExpr::Kind::RealLit:
      return false;
    case ClassicalExpr::Kind::Name: {
      const Param* param = p.find_param(e.name);
      return param != nullptr && param->kind == ParamKind::ClassicalInt;
    }
    case ClassicalExpr::Kind::Neg:
      return expr_is_int(*e.lhs, p);
    case ClassicalExpr::Kind::Add:
    case ClassicalExpr::Kind::Sub:
    case ClassicalExpr::Kind::Mul:
      return expr_is_int(*e.lhs, p) && expr_is_int(*e.rhs, p);
  }
  return false;
}

namespace {

int precedence(ClassicalExpr::Kind k) {
  switch (k) {
    case ClassicalExpr::Kind::Add:
    case ClassicalExpr::Kind::Sub:
      return 1;
    case ClassicalExpr::Kind::Mul:
      return 2;
    case ClassicalExpr::Kind::Neg:
      return 3;
    default:
      return 4;
  }
}

void render_expr_into(const ClassicalExpr& e, std::string& out, int parent) {
  const int prec = precedence(e.kind);
  const bool paren = prec < parent;
  if (paren) out += '(';
  switch (e.kind) {
    case ClassicalExpr::Kind::IntLit:
      out += std::to_string(e.int_value);
      break;
    case ClassicalExpr::Kind::RealLit:
      out += format_double(e.real_value);
      break;
    case ClassicalExpr::Kind::Name:
      out += e.name;
      break;
    case ClassicalExpr::Kind::Neg:
      out += '-';
      render_expr_into(*e.lhs, out, precedence(e.kind));
      break;
    case ClassicalExpr::Kind::Add:
    case ClassicalExpr::Kind::Sub:
    case ClassicalExpr::Kind::Mul: {
      render_expr_into(*e.lhs, out, prec);
      out += e.kind == ClassicalExpr::Kind::Add   ? " + "
             : e.kind == ClassicalExpr::Kind::Sub ? " - "
                                                  : " * ";
      // Right operand of - binds tighter to keep a - (b - c) unambiguous.
      render_expr_into(*e.rhs, out,
                       e.kind == ClassicalExpr::Kind::Mul ? prec : prec + 1);
      break;
    }
  }
  if (paren) out += ')';
}

}  // namespace

std::string render_expr(const ClassicalExpr& e) {
  std::string out;
  render_expr_into(e, out, 0);
  return out;
}

namespace {

struct Validator {
  const Program& p;
  std::vector<ValidationIssue> issues;

  void add(std::string msg, SourceSpan span = {}) {
    issues.push_back(ValidationIssue{std::move(msg), span});
  }

  void check_names(const ClassicalExpr& e, SourceSpan span) {
    switch (e.kind) {
      case ClassicalExpr::Kind::Name: {
        const Param* param = p.find_param(e.name);
        if (param == nullptr) {
          add("name '" + e.name + "' is not a parameter", span);
        } else if (param->kind == ParamKind::QReg) {
          add("quantum register '" + e.name +
                  "' used in a classical expression",
              span);
        }
        break;
      }
      case ClassicalExpr::Kind::Neg:
        check_names(*e.lhs, span);
        break;
      case ClassicalExpr::Kind::Add:
      case ClassicalExpr::Kind::Sub:
      case ClassicalExpr::Kind::Mul:
        check_names(*e.lhs, span);
        check_names(*e.rhs, span);
        break;
      default:
        break;
    }
  }

  void check_dist(const std::vector<double>& dist, double delta, int n,
                  SourceSpan span) {
    if (static_cast<int>(dist.size()) != (1 << n)) {
      add("distribution has " + std::to_string(dist.size()) +
              " entries, expected " + std::to_string(1 << n),
          span);
      return;
    }
    double sum = 0.0;
    for (double v : dist) {
      if (v < 0.0 || v > 1.0) {
        add("distribution entry " + format_double(v) + " outside [0, 1]",
            span);
      }
      sum += v;
    }
    if (std::fabs(sum - 1.0) > 1e-6) {
      add("distribution sums to " + format_double(sum) + ", expected 1",
          span);
    }
    if (!(delta > 0.0) || delta >= 1.0) {
      add("tolerance " + format_double(delta) + " outside (0, 1)", span);
    }
  }

  void check_bounds(const std::vector<ProbBound>& bounds, double delta, int n,
                    SourceSpan span) {
    if (bounds.empty()) add("empty probability bound list", span);
    std::set<std::size_t> seen;
    for (const auto& b : bounds) {
      if (b.outcome >= (std::size_t{1} << n)) {
        add("outcome index " + std::to_string(b.outcome) +
                " out of range for " + std::to_string(n) + " qubit(s)",
            span);
      }
      if (!seen.insert(b.outcome).second) {
        add("duplicate outcome " + outcome_bits(b.outcome, n) +
                " in bound list",
            span);
      }
      if (b.probability < 0.0 || b.probability > 1.0) {
        add("probability bound " + format_double(b.probability) +
                " outside [0, 1]",
            span);
      }
    }
    if (!(delta > 0.0) || delta >= 1.0) {
      add("tolerance " + format_double(delta) + " outside (0, 1)", span);
    }
  }

  void check_cond(const Cond& cond, int n, SourceSpan span) {
    if (const auto* c = std::get_if<ClassicalCond>(&cond)) {
      check_names(*c->lhs, span);
      check_names(*c->rhs, span);
    } else if (const auto* m = std::get_if<MeasureCond>(&cond)) {
      if (m->qubits.empty()) add("empty measurement qubit list", span);
      for (std::size_t i = 0; i < m->qubits.size(); ++i) {
        if (m->qubits[i] < 0 || m->qubits[i] >= n) {
          add("measured qubit " + std::to_string(m->qubits[i]) +
                  " out of range for " + std::to_string(n) + " qubit(s)",
              span);
        }
        if (i > 0 && m->qubits[i] <= m->qubits[i - 1]) {
          add("measurement qubits must be strictly ascending", span);
        }
      }
      if (m->outcomes.empty()) add("empty outcome list", span);
      std::set<std::size_t> seen;
      const std::size_t all =
          m->qubits.size() < 63 ? (std::size_t{1} << m->qubits.size()) : 0;
      for (std::size_t o : m->outcomes) {
        if (all && o >= all) {
          add("outcome " + std::to_string(o) + " out of range for " +
                  std::to_string(m->qubits.size()) + " measured qubit(s)",
              span);
        }
        if (!seen.insert(o).second) add("duplicate outcome in list", span);
      }
      if (all && seen.size() == all) {
        add("outcome list covers every outcome; the negation is infeasible",
            span);
      }
    } else if (const auto* eq = std::get_if<StateEqCond>(&cond)) {
      check_dist(eq->dist, eq->delta, n, span);
    } else if (const auto* gt = std::get_if<StateGtCond>(&cond)) {
      check_bounds(gt->bounds, gt->delta, n, span);
    } else if (const auto* lt = std::get_if<StateLtCond>(&cond)) {
      check_bounds(lt->bounds, lt->delta, n, span);
    }
  }

  void check_block(const Block& block, int n, int depth) {
    for (const Stmt& s : block) {
      if (const auto* g = std::get_if<GateOp>(&s.node)) {
        if (static_cast<int>(g->qubits.size()) != gate_num_qubits(g->gate)) {
          add("gate " + std::string(gate_name(g->gate)) + " expects " +
                  std::to_string(gate_num_qubits(g->gate)) + " qubit(s)",
              s.span);
        }
        std::set<int> distinct;
        for (int q : g->qubits) {
          if (q < 0 || q >= n) {
            add("qubit " + std::to_string(q) + " out of range for " +
                    std::to_string(n) + " qubit(s)",
                s.span);
          }
          if (!distinct.insert(q).second) {
            add("gate " + std::string(gate_name(g->gate)) +
                    " repeats qubit " + std::to_string(q),
                s.span);
          }
        }
        if (static_cast<int>(g->angles.size()) != gate_num_angles(g->gate)) {
          add("gate " + std::string(gate_name(g->gate)) + " expects " +
                  std::to_string(gate_num_angles(g->gate)) + " angle(s)",
              s.span);
        }
      } else if (const auto* br = std::get_if<IfStmt>(&s.node)) {
        if (depth + 1 > kMaxNestingDepth) {
          add("conditional nesting exceeds depth " +
                  std::to_string(kMaxNestingDepth),
              s.span);
        }
        check_cond(br->cond, n, s.span);
        check_block(br->then_block, n, depth + 1);
        check_block(br->else_block, n, depth + 1);
      } else if (const auto* ret = std::get_if<ReturnStmt>(&s.node)) {
        const std::size_t before = issues.size();
        check_names(*ret->value, s.span);
        if (issues.size() == before && !expr_is_int(*ret->value, p)) {
          add("return value must be integer-typed", s.span);
        }
      }
    }
  }

  void run() {
    if (p.name.empty()) add("program name is empty");
    int qregs = 0;
    std::set<std::string> names;
    for (const auto& param : p.params) {
      if (!names.insert(param.name).second) {
        add("duplicate parameter '" + param.name + "'");
      }
      if (param.kind == ParamKind::QReg) {
        ++qregs;
        if (param.qubits < 1) {
          add("quantum register must hold at least one qubit");
        } else if (param.qubits > kMaxQubits) {
          add("quantum register of " + std::to_string(param.qubits) +
              " qubits exceeds the capacity of " +
              std::to_string(kMaxQubits));
        }
      }
    }
    if (qregs != 1) {
      add("program must declare exactly one quantum register, found " +
          std::to_string(qregs));
    }
    const int n = p.num_qubits();
    if (p.reference_dist) {
      // Reuse the distribution rules; the tolerance argument is dummy.
      check_dist(*p.reference_dist, 0.5, n, {});
    }
    check_block(p.body, n, 0);
  }
};

}  // namespace

ValidationReport validate_program(const Program& p) {
  Validator v{p, {}};
  v.run();
  return ValidationReport{std::move(v.issues)};
}

namespace {

void indent(std::string& out, int depth) {
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
}

std::string render_dist(const std::vector<double>& dist, int n) {
  std::string out = "{";
  bool first = true;
  for (std::size_t a = 0; a < dist.size(); ++a) {
    if (dist[a] == 0.0) continue;
    if (!first) out += ", ";
    out += '"';
    out += outcome_bits(a, n);
    out += "\": ";
    out += format_double(dist[a]);
    first = false;
  }
  out += '}';
  return out;
}

std::string render_bounds(const std::vector<ProbBound>& bounds, int n) {
  std::string out = "[";
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    if (i) out += ", ";
    out += "(\"";
    out += outcome_bits(bounds[i].outcome, n);
    out += "\", ";
    out += format_double(bounds[i].probability);
    out += ')';
  }
  out += ']';
  return out;
}

std::string render_cond(const Cond& cond, const Program& p) {
  const int n = p.num_qubits();
  const std::string qreg = p.qreg_param() ? p.qreg_param()->name : "q";
  if (const auto* c = std::get_if<ClassicalCond>(&cond)) {
    return render_expr(*c->lhs) + " " + std::string(comparator_token(c->cmp)) +
           " " + render_expr(*c->rhs);
  }
  if (const auto* m = std::get_if<MeasureCond>(&cond)) {
    std::string out = "measure(" + qreg + ", [";
    for (std::size_t i = 0; i < m->qubits.size(); ++i) {
      if (i) out += ", ";
      out += std::to_string(m->qubits[i]);
    }
    out += "]) ";
    out += m->in ? "==" : "!=";
    out += " [";
    for (std::size_t i = 0; i < m->outcomes.size(); ++i) {
      if (i) out += ", ";
      out += '"';
      out += outcome_bits(m->outcomes[i], static_cast<int>(m->qubits.size()));
      out += '"';
    }
    out += ']';
    return out;
  }
  if (const auto* eq = std::get_if<StateEqCond>(&cond)) {
    return "check_state_eq(" + qreg + ", " + render_dist(eq->dist, n) + ", " +
           format_double(eq->delta) + ")";
  }
  if (const auto* gt = std::get_if<StateGtCond>(&cond)) {
    return "check_state_gt(" + qreg + ", " + render_bounds(gt->bounds, n) +
           ", " + format_double(gt->delta) + ")";
  }
  const auto& lt = std::get<StateLtCond>(cond);
  return "check_state_lt(" + qreg + ", " + render_bounds(lt.bounds, n) +
         ", " + format_double(lt.delta) + ")";
}

void unparse_block(const Block& block, const Program& p, std::string& out,
                   int depth);

void unparse_if(const IfStmt& br, const Program& p, std::string& out,
                int depth) {
  out += "if " + render_cond(br.cond, p) + " {\n";
  unparse_block(br.then_block, p, out, depth + 1);
  indent(out, depth);
  out += '}';
  if (!br.else_block.empty()) {
    // An else holding exactly one conditional prints as an else-if chain.
    if (br.else_block.size() == 1) {
      if (const auto* chained =
              std::get_if<IfStmt>(&br.else_block.front().node)) {
        out += " else ";
        unparse_if(*chained, p, out, depth);
        return;
      }
    }
    out += " else {\n";
    unparse_block(br.else_block, p, out, depth + 1);
    indent(out, depth);
    out += '}';
  }
}

void unparse_block(const Block& block, const Program& p, std::string& out,
                   int depth) {
  for (const Stmt& s : block) {
    indent(out, depth);
    if (const auto* g = std::get_if<GateOp>(&s.node)) {
      out += std::string(gate_name(g->gate)) + "(" +
             (p.qreg_param() ? p.qreg_param()->name : "q");
      for (int q : g->qubits) out += ", " + std::to_string(q);
      for (double a : g->angles) out += ", " + format_double(a);
      out += ");\n";
    } else if (const auto* br = std::get_if<IfStmt>(&s.node)) {
      unparse_if(*br, p, out, depth);
      out += '\n';
    } else if (const auto* ret = std::get_if<ReturnStmt>(&s.node)) {
      out += "return " + render_expr(*ret->value) + ";\n";
    }
  }
}

}  // namespace

std::string unparse(const Program& p) {
  std::string out = "program " + p.name + "(";
  for (std::size_t i = 0; i < p.params.size(); ++i) {
    if (i) out += ", ";
    out += p.params[i].name + ": ";
    switch (p.params[i].kind) {
      case ParamKind::ClassicalInt:
        out += "int";
        break;
      case ParamKind::ClassicalReal:
        out += "real";
        break;
      case ParamKind::QReg:
        out += "qreg(" + std::to_string(p.params[i].qubits) + ")";
        break;
    }
  }
  out += ")";
  if (p.reference_dist) {
    out += " expects " + render_dist(*p.reference_dist, p.num_qubits());
  }
  out += " {\n";
  unparse_block(p.body, p, out, 1);
  out += "}\n";
  return out;
}

}  // namespace qct
