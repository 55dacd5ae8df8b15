/**
 * Copyright 2026, the qct developers.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */
#include "qct/sim.hpp"

#include <cmath>

#include "qct/error.hpp"

namespace qct {

double StateVector::norm() const {
  double sum = 0.0;
  for (const Complex& a : amps) sum += std::norm(a);
  return std::sqrt(sum);
}

StateVector init_state(int n, int max_qubits) {
  if (n < 1) throw CapacityError("register needs at least one qubit");
  if (n > max_qubits) {
    throw CapacityError("register of " + std::to_string(n) +
                        " qubits exceeds the capacity of " +
                        std::to_string(max_qubits));
  }
  StateVector s;
  s.num_qubits = n;
  s.amps.assign(std::size_t{1} << n, Complex{0.0, 0.0});
  s.amps[0] = Complex{1.0, 0.0};
  return s;
}

void apply_gate_in_place(StateVector& state, const GateOp& op) {
  const int k = gate_num_qubits(op.gate);
  if (static_cast<int>(op.qubits.size()) != k) {
    throw ValidationError("gate " + std::string(gate_name(op.gate)) +
                          " expects " + std::to_string(k) + " qubit(s)");
  }
  std::size_t mask = 0;
  for (int q : op.qubits) {
    if (q < 0 || q >= state.num_qubits) {
      throw IndexError("qubit " + std::to_string(q) + " out of range for " +
                       std::to_string(state.num_qubits) + " qubit(s)");
    }
    const std::size_t bit = std::size_t{1} << q;
    if (mask & bit) {
      throw IndexError("gate " + std::string(gate_name(op.gate)) +
                       " repeats qubit " + std::to_string(q));
    }
    mask |= bit;
  }
  const std::vector<Complex> m = gate_matrix(op.gate, op.angles);
  const std::size_t sub = std::size_t{1} << k;

  // Local index j spreads to a global offset with bit i at qubits[i].
  std::vector<std::size_t> offsets(sub, 0);
  for (std::size_t j = 0; j < sub; ++j) {
    std::size_t off = 0;
    for (int i = 0; i < k; ++i) {
      if ((j >> i) & 1) off |= std::size_t{1} << op.qubits[i];
    }
    offsets[j] = off;
  }

  std::vector<Complex> in(sub), out(sub);
  for (std::size_t base = 0; base < state.dim(); ++base) {
    if (base & mask) continue;
    for (std::size_t j = 0; j < sub; ++j) in[j] = state.amps[base | offsets[j]];
    for (std::size_t r = 0; r < sub; ++r) {
      Complex acc{0.0, 0.0};
      for (std::size_t c = 0; c < sub; ++c) acc += m[r * sub + c] * in[c];
      out[r] = acc;
    }
    for (std::size_t j = 0; j < sub; ++j) state.amps[base | offsets[j]] = out[j];
  }
}

StateVector apply_gate(StateVector state, const GateOp& op) {
  apply_gate_in_place(state, op);
  return state;
}

std::vector<double> probabilities(const StateVector& state,
                                  const std::vector<int>& qubits) {
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    if (qubits[i] < 0 || qubits[i] >= state.num_qubits) {
      throw IndexError("qubit " + std::to_string(qubits[i]) +
                       " out of range for " +
                       std::to_string(state.num_qubits) + " qubit(s)");
    }
    if (i > 0 && qubits[i] <= qubits[i - 1]) {
      throw IndexError("measured qubits must be strictly ascending");
    }
  }
  std::vector<double> probs(std::size_t{1} << qubits.size(), 0.0);
  for (std::size_t x = 0; x < state.dim(); ++x) {
    std::size_t o = 0;
    for (std::size_t i = 0; i < qubits.size(); ++i) {
      if ((x >> qubits[i]) & 1) o |= std::size_t{1} << i;
    }
    probs[o] += std::norm(state.amps[x]);
  }
  return probs;
}

std::vector<double> probabilities(const StateVector& state) {
  std::vector<double> probs(state.dim());
  for (std::size_t x = 0; x < state.dim(); ++x) {
    probs[x] = std::norm(state.amps[x]);
  }
  return probs;
}

std::pair<Outcome, StateVector> measure_sample(const StateVector& state,
                                               const std::vector<int>& qubits,
                                               Rng& rng) {
  const std::vector<double> probs = probabilities(state, qubits);
  const double u = rng.uniform01();
  // Fallback for rounding shortfall: the last outcome with any support.
  std::size_t picked = 0;
  for (std::size_t o = 0; o < probs.size(); ++o) {
    if (probs[o] > 0.0) picked = o;
  }
  double acc = 0.0;
  for (std::size_t o = 0; o < probs.size(); ++o) {
    acc += probs[o];
    if (u < acc && probs[o] > 0.0) {
      picked = o;
      break;
    }
  }
  StateVector collapsed = state;
  const double scale = 1.0 / std::sqrt(probs[picked]);
  for (std::size_t x = 0; x < collapsed.dim(); ++x) {
    std::size_t o = 0;
    for (std::size_t i = 0; i < qubits.size(); ++i) {
      if ((x >> qubits[i]) & 1) o |= std::size_t{1} << i;
    }
    if (o == picked) {
      collapsed.amps[x] *= scale;
    } else {
      collapsed.amps[x] = Complex{0.0, 0.0};
    }
  }
  return {Outcome{picked, static_cast<int>(qubits.size())},
          std::move(collapsed)};
}

TestCase initial_test_case(const Program& p) {
  TestCase tc;
  for (const Param& param : p.params) {
    if (param.kind == ParamKind::ClassicalInt) {
      tc.classical[param.name] = std::int64_t{0};
    } else if (param.kind == ParamKind::ClassicalReal) {
      tc.classical[param.name] = 0.0;
    }
  }
  tc.initial_state = init_state(p.num_qubits());
  return tc;
}

std::string Trace::key() const {
  std::string out;
  for (const TraceStep& s : steps) {
    out += std::to_string(s.site);
    out += s.polarity ? 't' : 'f';
    out += ';';
  }
  out += "r=";
  out += std::to_string(result);
  return out;
}

ClassicalValue eval_expr(const ClassicalExpr& e, const TestCase& tc) {
  using K = ClassicalExpr::Kind;
  switch (e.kind) {
    case K::IntLit:
      return e.int_value;
    case K::RealLit:
      return e.real_value;
    case K::Name: {
      auto it = tc.classical.find(e.name);
      if (it == tc.classical.end()) {
        throw RuntimeTypeError("no value for parameter '" + e.name + "'");
      }
      return it->second;
    }
    case K::Neg: {
      ClassicalValue v = eval_expr(*e.lhs, tc);
      if (auto* i = std::get_if<std::int64_t>(&v)) return -*i;
      return -std::get<double>(v);
    }
    case K::Add:
    case K::Sub:
    case K::Mul: {
      ClassicalValue l = eval_expr(*e.lhs, tc);
      ClassicalValue r = eval_expr(*e.rhs, tc);
      const auto* li = std::get_if<std::int64_t>(&l);
      const auto* ri = std::get_if<std::int64_t>(&r);
      if (li && ri) {
        switch (e.kind) {
          case K::Add: return *li + *ri;
          case K::Sub: return *li - *ri;
          default: return *li * *ri;
        }
      }
      const double lf = li ? static_cast<double>(*li) : std::get<double>(l);
      const double rf = ri ? static_cast<double>(*ri) : std::get<double>(r);
      switch (e.kind) {
        case K::Add: return lf + rf;
        case K::Sub: return lf - rf;
        default: return lf * rf;
      }
    }
  }
  throw RuntimeTypeError("malformed expression");
}

bool eval_comparison(const ClassicalValue& lhs, Comparator cmp,
                     const ClassicalValue& rhs) {
  const auto* li = std::get_if<std::int64_t>(&lhs);
  const auto* ri = std::get_if<std::int64_t>(&rhs);
  if (li && ri) {
    switch (cmp) {
      case Comparator::Eq: return *li == *ri;
      case Comparator::Ne: return *li != *ri;
      case Comparator::Lt: return *li < *ri;
      case Comparator::Le: return *li <= *ri;
      case Comparator::Gt: return *li > *ri;
      case Comparator::Ge: return *li >= *ri;
    }
  }
  const double lf = li ? static_cast<double>(*li) : std::get<double>(lhs);
  const double rf = ri ? static_cast<double>(*ri) : std::get<double>(rhs);
  switch (cmp) {
    case Comparator::Eq: return lf == rf;
    case Comparator::Ne: return lf != rf;
    case Comparator::Lt: return lf < rf;
    case Comparator::Le: return lf <= rf;
    case Comparator::Gt: return lf > rf;
    case Comparator::Ge: return lf >= rf;
  }
  return false;
}

namespace {

struct Interp {
  const Program& p;
  const TestCase& tc;
  Rng& rng;
  StateVector state;
  Trace trace;
  bool returned = false;

  bool eval_cond(const IfStmt& br, TraceStep& step) {
    if (const auto* c = std::get_if<ClassicalCond>(&br.cond)) {
      return eval_comparison(eval_expr(*c->lhs, tc), c->cmp,
                             eval_expr(*c->rhs, tc));
    }
    if (const auto* m = std::get_if<MeasureCond>(&br.cond)) {
      auto [outcome, collapsed] = measure_sample(state, m->qubits, rng);
      state = std::move(collapsed);
      step.outcome = outcome;
      bool member = false;
      for (std::size_t o : m->outcomes) member = member || o == outcome.value;
      return m->in ? member : !member;
    }
    if (const auto* eq = std::get_if<StateEqCond>(&br.cond)) {
      step.dist = probabilities(state);
      for (std::size_t a = 0; a < step.dist.size(); ++a) {
        if (std::fabs(step.dist[a] - eq->dist[a]) >= eq->delta) return false;
      }
      return true;
    }
    if (const auto* gt = std::get_if<StateGtCond>(&br.cond)) {
      step.dist = probabilities(state);
      for (const ProbBound& b : gt->bounds) {
        if (!(step.dist[b.outcome] > b.probability)) return false;
      }
      return true;
    }
    const auto& lt = std::get<StateLtCond>(br.cond);
    step.dist = probabilities(state);
    for (const ProbBound& b : lt.bounds) {
      if (!(step.dist[b.outcome] < b.probability)) return false;
    }
    return true;
  }

  void run_block(const Block& block) {
    for (const Stmt& s : block) {
      if (returned) return;
      if (const auto* g = std::get_if<GateOp>(&s.node)) {
        apply_gate_in_place(state, *g);
        trace.ops.push_back(*g);
      } else if (const auto* br = std::get_if<IfStmt>(&s.node)) {
        TraceStep step;
        step.site = br->site_id;
        step.ops_prefix = static_cast<int>(trace.ops.size());
        step.polarity = eval_cond(*br, step);
        const bool polarity = step.polarity;
        trace.steps.push_back(std::move(step));
        run_block(polarity ? br->then_block : br->else_block);
      } else if (const auto* ret = std::get_if<ReturnStmt>(&s.node)) {
        ClassicalValue v = eval_expr(*ret->value, tc);
        if (const auto* i = std::get_if<std::int64_t>(&v)) {
          trace.result = *i;
        } else {
          throw RuntimeTypeError("program returned a non-integer value");
        }
        returned = true;
        return;
      }
    }
  }
};

}  // namespace

Trace execute_concrete(const Program& p, const TestCase& tc, Rng& rng) {
  for (const Param& param : p.params) {
    if (param.kind == ParamKind::QReg) continue;
    auto it = tc.classical.find(param.name);
    if (it == tc.classical.end()) {
      throw RuntimeTypeError("test case has no value for parameter '" +
                             param.name + "'");
    }
    const bool is_int = std::holds_alternative<std::int64_t>(it->second);
    if (is_int != (param.kind == ParamKind::ClassicalInt)) {
      throw RuntimeTypeError("test case value for '" + param.name +
                             "' has the wrong type");
    }
  }
  if (tc.initial_state.num_qubits != p.num_qubits()) {
    throw RuntimeTypeError("test case register has " +
                           std::to_string(tc.initial_state.num_qubits) +
                           " qubit(s), program declares " +
                           std::to_string(p.num_qubits()));
  }
  Interp interp{p, tc, rng, tc.initial_state, {}, false};
  interp.run_block(p.body);
  interp.trace.final_probs = probabilities(interp.state);
  return std::move(interp.trace);
}

}  // namespace qct
