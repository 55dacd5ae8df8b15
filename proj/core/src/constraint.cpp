/**
 * Copyright 2026, the qct developers.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */
#include "qct/constraint.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qct/error.hpp"

namespace qct {

Atom negate(const Atom& a) {
  Atom out = a;
  switch (a.kind) {
    case AtomKind::MeasureIn:
      out.kind = AtomKind::MeasureNotIn;
      break;
    case AtomKind::MeasureNotIn:
      out.kind = AtomKind::MeasureIn;
      break;
    case AtomKind::DistEq:
      out.kind = AtomKind::DistNeq;
      break;
    case AtomKind::DistNeq:
      out.kind = AtomKind::DistEq;
      break;
    case AtomKind::ProbGt:
      out.kind = AtomKind::ProbLe;
      break;
    case AtomKind::ProbLe:
      out.kind = AtomKind::ProbGt;
      break;
    case AtomKind::ClassicalCmp: {
      auto& payload = std::get<ClassicalPayload>(out.payload);
      payload.cmp = negate_comparator(payload.cmp);
      break;
    }
  }
  return out;
}

std::vector<std::size_t> measure_zero_indices(
    int n, const std::vector<int>& qubits,
    const std::vector<std::size_t>& outcomes, bool in) {
  std::set<std::size_t> listed(outcomes.begin(), outcomes.end());
  std::vector<std::size_t> zeroed;
  for (std::size_t x = 0; x < (std::size_t{1} << n); ++x) {
    std::size_t o = 0;
    for (std::size_t i = 0; i < qubits.size(); ++i) {
      if ((x >> qubits[i]) & 1) o |= std::size_t{1} << i;
    }
    const bool member = listed.count(o) > 0;
    if (in != member) zeroed.push_back(x);
  }
  return zeroed;
}

Atom measure_constraint(AmplitudeExprs exprs, std::vector<GateOp> prefix,
                        const MeasureCond& cond, bool polarity, int site) {
  Atom a;
  a.kind = (cond.in == polarity) ? AtomKind::MeasureIn : AtomKind::MeasureNotIn;
  a.site = site;
  a.exprs = std::move(exprs);
  a.prefix_ops = std::move(prefix);
  a.payload = MeasurePayload{cond.qubits, cond.outcomes};
  return a;
}

Atom eq_constraint(AmplitudeExprs exprs, std::vector<GateOp> prefix,
                   const StateEqCond& cond, bool polarity, int site) {
  Atom a;
  a.kind = polarity ? AtomKind::DistEq : AtomKind::DistNeq;
  a.site = site;
  a.exprs = std::move(exprs);
  a.prefix_ops = std::move(prefix);
  a.payload = DistPayload{cond.dist, cond.delta};
  return a;
}

Atom gt_constraint(AmplitudeExprs exprs, std::vector<GateOp> prefix,
                   const StateGtCond& cond, bool polarity, int site) {
  Atom a;
  a.kind = polarity ? AtomKind::ProbGt : AtomKind::ProbLe;
  a.site = site;
  a.exprs = std::move(exprs);
  a.prefix_ops = std::move(prefix);
  a.payload = ProbPayload{cond.bounds, cond.delta};
  return a;
}

Atom lt_constraint(AmplitudeExprs exprs, std::vector<GateOp> prefix,
                   const StateLtCond& cond, bool polarity, int site) {
  Atom a;
  a.kind = polarity ? AtomKind::ProbLe : AtomKind::ProbGt;
  a.site = site;
  a.exprs = std::move(exprs);
  a.prefix_ops = std::move(prefix);
  a.payload = ProbPayload{cond.bounds, cond.delta};
  return a;
}

namespace {

void collect_names(const ClassicalExpr& e, std::set<std::string>& out) {
  switch (e.kind) {
    case ClassicalExpr::Kind::Name:
      out.insert(e.name);
      break;
    case ClassicalExpr::Kind::Neg:
      collect_names(*e.lhs, out);
      break;
    case ClassicalExpr::Kind::Add:
    case ClassicalExpr::Kind::Sub:
    case ClassicalExpr::Kind::Mul:
      collect_names(*e.lhs, out);
      collect_names(*e.rhs, out);
      break;
    default:
      break;
  }
}

}  // namespace

Atom classical_constraint(const SymbolicEnv& env, const Program& p,
                          const ClassicalCond& cond, bool polarity, int site) {
  ClassicalPayload payload;
  payload.lhs = cond.lhs;
  payload.rhs = cond.rhs;
  payload.cmp = polarity ? cond.cmp : negate_comparator(cond.cmp);
  payload.int_context =
      expr_is_int(*cond.lhs, p) && expr_is_int(*cond.rhs, p);
  std::set<std::string> names;
  collect_names(*cond.lhs, names);
  collect_names(*cond.rhs, names);
  for (const std::string& name : names) {
    auto it = env.classical.find(name);
    if (it == env.classical.end()) {
      throw UnboundSymbolError("no symbol bound for '" + name + "'");
    }
    payload.symbols[name] = it->second.rendered();
  }
  Atom a;
  a.kind = AtomKind::ClassicalCmp;
  a.site = site;
  a.exprs = AmplitudeExprs{};
  a.payload = std::move(payload);
  return a;
}

PathConstraint path_condition(const Trace& trace, const Program& p,
                              const SymbolicEnv& env) {
  PathConstraint pc;
  pc.trace = trace;
  for (const TraceStep& step : trace.steps) {
    const IfStmt* br = find_branch(p, step.site);
    if (br == nullptr) {
      throw Error("trace references unknown branch site " +
                  std::to_string(step.site));
    }
    std::vector<GateOp> prefix(trace.ops.begin(),
                               trace.ops.begin() + step.ops_prefix);
    if (std::holds_alternative<ClassicalCond>(br->cond)) {
      pc.atoms.push_back(classical_constraint(
          env, p, std::get<ClassicalCond>(br->cond), step.polarity,
          step.site));
      continue;
    }
    AmplitudeExprs exprs = amplitude_exprs(prefix, p.num_qubits());
    if (const auto* m = std::get_if<MeasureCond>(&br->cond)) {
      pc.atoms.push_back(measure_constraint(std::move(exprs),
                                            std::move(prefix), *m,
                                            step.polarity, step.site));
    } else if (const auto* eq = std::get_if<StateEqCond>(&br->cond)) {
      pc.atoms.push_back(eq_constraint(std::move(exprs), std::move(prefix),
                                       *eq, step.polarity, step.site));
    } else if (const auto* gt = std::get_if<StateGtCond>(&br->cond)) {
      pc.atoms.push_back(gt_constraint(std::move(exprs), std::move(prefix),
                                       *gt, step.polarity, step.site));
    } else {
      pc.atoms.push_back(lt_constraint(std::move(exprs), std::move(prefix),
                                       std::get<StateLtCond>(br->cond),
                                       step.polarity, step.site));
    }
  }
  return pc;
}

namespace {

std::string render_ops_brackets(const std::vector<GateOp>& ops) {
  std::string out = "[";
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (i) out += ", ";
    out += render_op(ops[i]);
  }
  out += ']';
  return out;
}

std::string render_quantum_object(const SymbolicEnv& env,
                                  const std::vector<GateOp>& ops) {
  return env.quantum.name + render_ops_brackets(ops);
}

std::string render_outcome_list(const std::vector<std::size_t>& outcomes,
                                int width) {
  std::string out = "[";
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (i) out += ", ";
    out += '"';
    out += outcome_bits(outcomes[i], width);
    out += '"';
  }
  out += ']';
  return out;
}

std::string comparator_glyph(Comparator c) {
  switch (c) {
    case Comparator::Eq: return "=";
    case Comparator::Ne: return "≠";   // not-equal sign
    case Comparator::Lt: return "<";
    case Comparator::Le: return "≤";   // less-or-equal sign
    case Comparator::Gt: return ">";
    case Comparator::Ge: return "≥";   // greater-or-equal sign
  }
  return "?";
}

std::string render_symbolic_expr(const ClassicalExpr& e,
                                 const ClassicalPayload& payload);

std::string render_dist_literal(const std::vector<double>& dist, int n) {
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

}  // namespace

std::string render(const Atom& a, const SymbolicEnv& env) {
  switch (a.kind) {
    case AtomKind::MeasureIn:
    case AtomKind::MeasureNotIn: {
      const auto& m = std::get<MeasurePayload>(a.payload);
      std::string out = render_quantum_object(env, a.prefix_ops);
      out += '[';
      for (std::size_t i = 0; i < m.qubits.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(m.qubits[i]);
      }
      out += "] ";
      out += a.kind == AtomKind::MeasureIn ? "∈" : "∉";
      out += ' ';
      out += render_outcome_list(m.outcomes,
                                 static_cast<int>(m.qubits.size()));
      return out;
    }
    case AtomKind::DistEq:
    case AtomKind::DistNeq: {
      const auto& d = std::get<DistPayload>(a.payload);
      std::string out = "dist(";
      out += render_quantum_object(env, a.prefix_ops);
      out += ") ";
      out += a.kind == AtomKind::DistEq ? "≈" : "≉";
      out += ' ';
      out += render_dist_literal(d.dist, a.exprs.num_qubits);
      out += " ± ";
      out += format_double(d.delta);
      return out;
    }
    case AtomKind::ProbGt:
    case AtomKind::ProbLe: {
      const auto& pb = std::get<ProbPayload>(a.payload);
      const bool gt = a.kind == AtomKind::ProbGt;
      std::string out;
      for (std::size_t i = 0; i < pb.bounds.size(); ++i) {
        if (i) out += " ∧ ";
        out += "P(";
        out += render_quantum_object(env, a.prefix_ops);
        out += " = \"";
        out += outcome_bits(pb.bounds[i].outcome, a.exprs.num_qubits);
        out += "\") ";
        out += gt ? ">" : "≤";
        out += ' ';
        out += format_double(gt ? pb.bounds[i].probability - pb.delta
                                : pb.bounds[i].probability + pb.delta);
      }
      return out;
    }
    case AtomKind::ClassicalCmp: {
      const auto& c = std::get<ClassicalPayload>(a.payload);
      return render_symbolic_expr(*c.lhs, c) + " " +
             comparator_glyph(c.cmp) + " " + render_symbolic_expr(*c.rhs, c);
    }
  }
  return "";
}

namespace {

std::string render_symbolic_expr(const ClassicalExpr& e,
                                 const ClassicalPayload& payload,
                                 int parent);

int sym_precedence(ClassicalExpr::Kind k) {
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

std::string render_symbolic_expr(const ClassicalExpr& e,
                                 const ClassicalPayload& payload,
                                 int parent) {
  const int prec = sym_precedence(e.kind);
  std::string body;
  switch (e.kind) {
    case ClassicalExpr::Kind::IntLit:
      body = std::to_string(e.int_value);
      break;
    case ClassicalExpr::Kind::RealLit:
      body = format_double(e.real_value);
      break;
    case ClassicalExpr::Kind::Name: {
      auto it = payload.symbols.find(e.name);
      body = it != payload.symbols.end() ? it->second : e.name;
      break;
    }
    case ClassicalExpr::Kind::Neg:
      body = "-" + render_symbolic_expr(*e.lhs, payload, prec);
      break;
    case ClassicalExpr::Kind::Add:
    case ClassicalExpr::Kind::Sub:
    case ClassicalExpr::Kind::Mul:
      body = render_symbolic_expr(*e.lhs, payload, prec) +
             (e.kind == ClassicalExpr::Kind::Add   ? " + "
              : e.kind == ClassicalExpr::Kind::Sub ? " - "
                                                   : " * ") +
             render_symbolic_expr(*e.rhs, payload,
                                  e.kind == ClassicalExpr::Kind::Mul
                                      ? prec
                                      : prec + 1);
      break;
  }
  if (prec < parent) return "(" + body + ")";
  return body;
}

std::string render_symbolic_expr(const ClassicalExpr& e,
                                 const ClassicalPayload& payload) {
  return render_symbolic_expr(e, payload, 0);
}

}  // namespace

std::string render(const PathConstraint& pc, const SymbolicEnv& env) {
  std::vector<std::string> parts;
  for (const Atom& a : pc.atoms) {
    if (a.kind == AtomKind::ClassicalCmp) parts.push_back(render(a, env));
  }
  for (const Atom& a : pc.atoms) {
    if (a.kind != AtomKind::ClassicalCmp) parts.push_back(render(a, env));
  }
  if (parts.empty()) return "true";
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += " ∧ ";
    out += parts[i];
  }
  return out;
}

bool eval_atom(const Atom& a, const StateVector& initial,
               const std::map<std::string, ClassicalValue>& classical,
               double slack) {
  if (a.kind == AtomKind::ClassicalCmp) {
    const auto& c = std::get<ClassicalPayload>(a.payload);
    TestCase tc;
    tc.classical = classical;
    return eval_comparison(eval_expr(*c.lhs, tc), c.cmp,
                           eval_expr(*c.rhs, tc));
  }
  const StateVector at_site = a.exprs.substitute(initial);
  switch (a.kind) {
    case AtomKind::MeasureIn:
    case AtomKind::MeasureNotIn: {
      const auto& m = std::get<MeasurePayload>(a.payload);
      const auto zeroed =
          measure_zero_indices(a.exprs.num_qubits, m.qubits, m.outcomes,
                               a.kind == AtomKind::MeasureIn);
      for (std::size_t x : zeroed) {
        if (std::fabs(at_site.amps[x].real()) > slack) return false;
        if (std::fabs(at_site.amps[x].imag()) > slack) return false;
      }
      return true;
    }
    case AtomKind::DistEq: {
      const auto& d = std::get<DistPayload>(a.payload);
      const std::vector<double> probs = probabilities(at_site);
      for (std::size_t x = 0; x < probs.size(); ++x) {
        if (std::fabs(probs[x] - d.dist[x]) >= d.delta + slack) return false;
      }
      return true;
    }
    case AtomKind::DistNeq: {
      const auto& d = std::get<DistPayload>(a.payload);
      const std::vector<double> probs = probabilities(at_site);
      for (std::size_t x = 0; x < probs.size(); ++x) {
        if (std::fabs(probs[x] - d.dist[x]) >= d.delta - slack) return true;
      }
      return false;
    }
    case AtomKind::ProbGt: {
      const auto& pb = std::get<ProbPayload>(a.payload);
      const std::vector<double> probs = probabilities(at_site);
      for (const ProbBound& b : pb.bounds) {
        if (!(probs[b.outcome] > b.probability - pb.delta - slack)) {
          return false;
        }
      }
      return true;
    }
    case AtomKind::ProbLe: {
      const auto& pb = std::get<ProbPayload>(a.payload);
      const std::vector<double> probs = probabilities(at_site);
      for (const ProbBound& b : pb.bounds) {
        if (!(probs[b.outcome] <= b.probability + pb.delta + slack)) {
          return false;
        }
      }
      return true;
    }
    default:
      return false;
  }
}

bool eval_path_constraint(const PathConstraint& pc, const StateVector& initial,
                          const std::map<std::string, ClassicalValue>&
                              classical,
                          double slack) {
  for (const Atom& a : pc.atoms) {
    if (!eval_atom(a, initial, classical, slack)) return false;
  }
  return true;
}

void ForkTree::update(const Trace& trace, const PathConstraint& pc) {
  if (pc.atoms.size() != trace.steps.size()) {
    throw std::logic_error("path constraint does not match trace");
  }
  last_trace_.clear();
  std::unique_ptr<Node>* slot = &root_;
  for (std::size_t d = 0; d < trace.steps.size(); ++d) {
    const TraceStep& step = trace.steps[d];
    if (!*slot) {
      *slot = std::make_unique<Node>();
      (*slot)->site = step.site;
    }
    Node* node = slot->get();
    if (node->site != step.site) {
      throw std::logic_error("trace diverges from fork tree structure");
    }
    if (!node->atom_true) {
      node->atom_true =
          step.polarity ? pc.atoms[d] : negate(pc.atoms[d]);
    }
    node->explored[step.polarity ? 1 : 0] = true;
    last_trace_.emplace_back(step.site, step.polarity);
    slot = &node->child[step.polarity ? 1 : 0];
  }
}

ForkTree::Node* ForkTree::walk(const std::vector<bool>& prefix) const {
  Node* node = root_.get();
  for (bool polarity : prefix) {
    if (node == nullptr) return nullptr;
    node = node->child[polarity ? 1 : 0].get();
  }
  return node;
}

std::optional<ForkTree::Target> ForkTree::select_target() const {
  // Deepest-first along the most recent trace.
  if (!last_trace_.empty()) {
    for (int d = static_cast<int>(last_trace_.size()) - 1; d >= 0; --d) {
      std::vector<bool> prefix;
      for (int i = 0; i < d; ++i) prefix.push_back(last_trace_[i].second);
      Node* node = walk(prefix);
      if (node == nullptr) continue;
      const bool flipped = !last_trace_[d].second;
      if (!node->settled(flipped)) {
        return Target{std::move(prefix), node->site, flipped};
      }
    }
  }
  // Fallback: deepest frontier entry anywhere.
  std::optional<Target> best;
  std::vector<bool> path;
  const auto visit = [&](auto&& self, const Node* node) -> void {
    if (node == nullptr) return;
    for (const bool polarity : {false, true}) {
      if (!node->settled(polarity)) {
        if (!best || path.size() > best->prefix.size()) {
          best = Target{path, node->site, polarity};
        }
      }
    }
    for (const bool polarity : {false, true}) {
      path.push_back(polarity);
      self(self, node->child[polarity ? 1 : 0].get());
      path.pop_back();
    }
  };
  visit(visit, root_.get());
  return best;
}

PathConstraint ForkTree::target_constraint(const Target& target) const {
  PathConstraint pc;
  Node* node = root_.get();
  for (bool polarity : target.prefix) {
    if (node == nullptr || !node->atom_true) {
      throw std::logic_error("target prefix leaves the fork tree");
    }
    pc.atoms.push_back(polarity ? *node->atom_true
                                : negate(*node->atom_true));
    node = node->child[polarity ? 1 : 0].get();
  }
  if (node == nullptr || !node->atom_true) {
    throw std::logic_error("target node missing from the fork tree");
  }
  pc.atoms.push_back(target.polarity ? *node->atom_true
                                     : negate(*node->atom_true));
  return pc;
}

void ForkTree::mark_unsat(const Target& target) {
  Node* node = walk(target.prefix);
  if (node == nullptr) throw std::logic_error("target node missing");
  node->unsat[target.polarity ? 1 : 0] = true;
}

void ForkTree::mark_abandoned(const Target& target) {
  Node* node = walk(target.prefix);
  if (node == nullptr) throw std::logic_error("target node missing");
  node->abandoned[target.polarity ? 1 : 0] = true;
}

namespace {

bool all_settled(const ForkTree::Node* node) {
  if (node == nullptr) return true;
  if (!node->settled(false) || !node->settled(true)) return false;
  return all_settled(node->child[0].get()) && all_settled(node->child[1].get());
}

template <typename F>
void for_each_node(const ForkTree::Node* node, F&& f) {
  if (node == nullptr) return;
  f(*node);
  for_each_node(node->child[0].get(), f);
  for_each_node(node->child[1].get(), f);
}

}  // namespace

bool ForkTree::fully_explored() const { return all_settled(root_.get()); }

std::set<std::pair<int, bool>> ForkTree::covered_pairs() const {
  std::set<std::pair<int, bool>> out;
  for_each_node(root_.get(), [&](const Node& node) {
    if (node.explored[0]) out.emplace(node.site, false);
    if (node.explored[1]) out.emplace(node.site, true);
  });
  return out;
}

std::set<std::pair<int, bool>> ForkTree::unsat_pairs() const {
  std::set<std::pair<int, bool>> out;
  for_each_node(root_.get(), [&](const Node& node) {
    if (node.unsat[0]) out.emplace(node.site, false);
    if (node.unsat[1]) out.emplace(node.site, true);
  });
  return out;
}

std::set<std::pair<int, bool>> ForkTree::abandoned_pairs() const {
  std::set<std::pair<int, bool>> out;
  for_each_node(root_.get(), [&](const Node& node) {
    if (node.abandoned[0]) out.emplace(node.site, false);
    if (node.abandoned[1]) out.emplace(node.site, true);
  });
  return out;
}

std::set<int> ForkTree::sites_in_tree() const {
  std::set<int> out;
  for_each_node(root_.get(), [&](const Node& node) { out.insert(node.site); });
  return out;
}

}  // namespace qct
