/**
 * Copyright 2026, the qct developers.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */
#include "qct/benchgen.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>
#include <utility>

#include "qct/error.hpp"

namespace qct {

std::string scale_name(BenchScale scale) {
  switch (scale) {
    case BenchScale::Small: return "small";
    case BenchScale::Medium: return "medium";
    case BenchScale::Large: return "large";
  }
  return "small";
}

std::string structure_name(BenchStructure structure) {
  switch (structure) {
    case BenchStructure::Simple: return "simple";
    case BenchStructure::Nested: return "nested";
    case BenchStructure::Multiway: return "multiway";
    case BenchStructure::Multiparam: return "multiparam";
  }
  return "simple";
}

BenchScale scale_from_name(const std::string& name) {
  if (name == "small") return BenchScale::Small;
  if (name == "medium") return BenchScale::Medium;
  if (name == "large") return BenchScale::Large;
  throw ValidationError("unknown benchmark scale: " + name);
}

BenchStructure structure_from_name(const std::string& name) {
  if (name == "simple") return BenchStructure::Simple;
  if (name == "nested") return BenchStructure::Nested;
  if (name == "multiway") return BenchStructure::Multiway;
  if (name == "multiparam") return BenchStructure::Multiparam;
  throw ValidationError("unknown benchmark structure: " + name);
}

int scale_ops(BenchScale scale) {
  switch (scale) {
    case BenchScale::Small: return 5;
    case BenchScale::Medium: return 10;
    case BenchScale::Large: return 20;
  }
  return 5;
}

namespace {

constexpr double kTau = 6.283185307179586;

const GateKind kSingle[] = {GateKind::X,  GateKind::Y,  GateKind::Z,
                            GateKind::H,  GateKind::S,  GateKind::T,
                            GateKind::Rx, GateKind::Ry, GateKind::Rz,
                            GateKind::P};
const GateKind kDouble[] = {GateKind::Cx, GateKind::Cz, GateKind::Swap};

Stmt gate_stmt(GateOp op) { return Stmt{std::move(op), SourceSpan{}}; }

Stmt return_stmt(std::int64_t v) {
  return Stmt{ReturnStmt{ClassicalExpr::int_lit(v)}, SourceSpan{}};
}

struct Gen {
  const BenchSpec& spec;
  Rng rng;
  int cond_count = 0;
  std::optional<std::vector<double>> first_eq_dist;

  explicit Gen(const BenchSpec& s) : spec(s), rng(s.seed) {}

  GateOp random_op() {
    GateOp op;
    if (spec.qubits >= 2 && rng.uniform_int(0, 3) == 0) {
      op.gate = kDouble[rng.uniform_int(0, 2)];
      int a = static_cast<int>(rng.uniform_int(0, spec.qubits - 1));
      int b = static_cast<int>(rng.uniform_int(0, spec.qubits - 2));
      if (b >= a) ++b;
      op.qubits = {a, b};
    } else {
      op.gate = kSingle[rng.uniform_int(0, 9)];
      op.qubits = {static_cast<int>(rng.uniform_int(0, spec.qubits - 1))};
    }
    for (int i = 0; i < gate_num_angles(op.gate); ++i) {
      op.angles.push_back(rng.uniform01() * kTau);
    }
    return op;
  }

  Block ops(int count) {
    Block b;
    for (int i = 0; i < count; ++i) b.push_back(gate_stmt(random_op()));
    return b;
  }

  Cond classical_cond(const std::string& param) {
    static const Comparator kCmps[] = {Comparator::Eq, Comparator::Ne,
                                       Comparator::Lt, Comparator::Le,
                                       Comparator::Gt, Comparator::Ge};
    ClassicalCond c;
    c.lhs = ClassicalExpr::make_name(param);
    c.cmp = kCmps[rng.uniform_int(0, 5)];
    c.rhs = ClassicalExpr::int_lit(rng.uniform_int(0, 7));
    return c;
  }

  Cond measure_cond() {
    MeasureCond c;
    int k = spec.qubits == 1 ? 1 : static_cast<int>(rng.uniform_int(1, 2));
    std::set<int> picks;
    while (static_cast<int>(picks.size()) < k) {
      picks.insert(static_cast<int>(rng.uniform_int(0, spec.qubits - 1)));
    }
    c.qubits.assign(picks.begin(), picks.end());
    int states = 1 << k;
    // Proper nonempty subset: both membership polarities stay satisfiable.
    std::int64_t mask = rng.uniform_int(1, (1 << states) - 2);
    for (int o = 0; o < states; ++o) {
      if ((mask >> o) & 1) c.outcomes.push_back(static_cast<std::size_t>(o));
    }
    c.in = rng.uniform_int(0, 1) == 0;
    return c;
  }

  Cond eq_cond() {
    StateEqCond c;
    c.delta = spec.delta;
    std::size_t dim = std::size_t{1} << spec.qubits;
    double total = 0.0;
    for (std::size_t a = 0; a < dim; ++a) {
      double e = -std::log(1.0 - rng.uniform01());
      c.dist.push_back(e);
      total += e;
    }
    for (double& d : c.dist) d /= total;
    if (!first_eq_dist) first_eq_dist = c.dist;
    return c;
  }

  Cond gt_cond() {
    StateGtCond c;
    c.delta = spec.delta;
    std::size_t dim = std::size_t{1} << spec.qubits;
    std::size_t s = static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(dim) - 1));
    c.bounds.push_back({s, 0.1 + 0.5 * rng.uniform01()});
    return c;
  }

  Cond lt_cond() {
    StateLtCond c;
    c.delta = spec.delta;
    std::size_t dim = std::size_t{1} << spec.qubits;
    std::size_t s = static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(dim) - 1));
    c.bounds.push_back({s, 0.4 + 0.5 * rng.uniform01()});
    return c;
  }

  /// State-equality conditions are confined to the first branch site so a
  /// program has at most one, always on every path, which keeps quality
  /// scoring comparable across search strategies.
  Cond make_cond(bool allow_eq, const std::string& cparam) {
    std::int64_t roll = rng.uniform_int(0, 4);
    if (spec.force_eq_first && allow_eq) roll = 0;
    if (roll == 0 && !allow_eq) roll = 3 + (cond_count % 2);
    ++cond_count;
    switch (roll) {
      case 0: return eq_cond();
      case 1: return measure_cond();
      case 2: return classical_cond(cparam);
      case 3: return gt_cond();
      default: return lt_cond();
    }
  }

  Block build_simple() {
    int t = scale_ops(spec.scale);
    int pre = t / 2;
    Block body = ops(pre);
    IfStmt s;
    s.cond = make_cond(true, "k");
    s.then_block = ops(t - pre);
    s.then_block.push_back(return_stmt(1));
    s.else_block = ops(t - pre);
    s.else_block.push_back(return_stmt(2));
    body.push_back(Stmt{std::move(s), SourceSpan{}});
    return body;
  }

  Block build_nested(const std::string& outer_param,
                     const std::string& inner_param, bool classical_only) {
    int t = scale_ops(spec.scale);
    int pre = t / 3;
    int mid = t / 3;
    Block body = ops(pre);
    IfStmt outer;
    outer.cond = classical_only ? classical_cond(outer_param)
                                : make_cond(true, outer_param);
    Block then_block = ops(mid);
    IfStmt inner;
    inner.cond = classical_only ? classical_cond(inner_param)
                                : make_cond(false, inner_param);
    inner.then_block = ops(t - pre - mid);
    inner.then_block.push_back(return_stmt(1));
    inner.else_block = ops(t - pre - mid);
    inner.else_block.push_back(return_stmt(2));
    then_block.push_back(Stmt{std::move(inner), SourceSpan{}});
    outer.then_block = std::move(then_block);
    outer.else_block = ops(t - pre);
    outer.else_block.push_back(return_stmt(3));
    body.push_back(Stmt{std::move(outer), SourceSpan{}});
    return body;
  }

  Block build_multiway() {
    int t = scale_ops(spec.scale);
    int pre = t / 2;
    int arm = t - pre;
    Block body = ops(pre);
    Cond c1 = make_cond(true, "k");
    Cond c2 = make_cond(false, "k");
    Cond c3 = make_cond(false, "k");
    IfStmt last;
    last.cond = std::move(c3);
    last.then_block = ops(arm);
    last.then_block.push_back(return_stmt(3));
    last.else_block = ops(arm);
    last.else_block.push_back(return_stmt(4));
    IfStmt mid;
    mid.cond = std::move(c2);
    mid.then_block = ops(arm);
    mid.then_block.push_back(return_stmt(2));
    mid.else_block.push_back(Stmt{std::move(last), SourceSpan{}});
    IfStmt first;
    first.cond = std::move(c1);
    first.then_block = ops(arm);
    first.then_block.push_back(return_stmt(1));
    first.else_block.push_back(Stmt{std::move(mid), SourceSpan{}});
    body.push_back(Stmt{std::move(first), SourceSpan{}});
    return body;
  }
};

}  // namespace

Program generate_benchmark(const BenchSpec& spec) {
  if (spec.qubits < 1 || spec.qubits > kMaxQubits) {
    throw ValidationError("benchmark qubit count out of range");
  }
  Gen gen(spec);
  Program p;
  p.name = "bench_" + structure_name(spec.structure) + "_" +
           scale_name(spec.scale) + "_s" + std::to_string(spec.seed);
  if (spec.structure == BenchStructure::Multiparam) {
    p.params.push_back({"a", ParamKind::ClassicalInt, 0});
    p.params.push_back({"b", ParamKind::ClassicalInt, 0});
  } else {
    p.params.push_back({"k", ParamKind::ClassicalInt, 0});
  }
  p.params.push_back({"q", ParamKind::QReg, spec.qubits});
  switch (spec.structure) {
    case BenchStructure::Simple:
      p.body = gen.build_simple();
      break;
    case BenchStructure::Nested:
      p.body = gen.build_nested("k", "k", false);
      break;
    case BenchStructure::Multiway:
      p.body = gen.build_multiway();
      break;
    case BenchStructure::Multiparam:
      p.body = gen.build_nested("a", "b", true);
      break;
  }
  p.reference_dist = gen.first_eq_dist;
  assign_branch_sites(p);
  return p;
}

std::string generate_benchmark_text(const BenchSpec& spec) {
  return unparse(generate_benchmark(spec));
}

StateVector random_state(int num_qubits, Rng& rng) {
  StateVector state = init_state(num_qubits);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (Complex& amp : state.amps) {
      double re = rng.gaussian();
      double im = rng.gaussian();
      amp = Complex(re, im);
      norm2 += re * re + im * im;
    }
  } while (norm2 == 0.0);
  double inv = 1.0 / std::sqrt(norm2);
  for (Complex& amp : state.amps) amp *= inv;
  return state;
}

StateVector random_circuit_input(int num_qubits, Rng& rng, int depth) {
  static const GateKind kLayer[] = {GateKind::H,  GateKind::Rx, GateKind::Ry,
                                    GateKind::Rz, GateKind::T,  GateKind::X};
  StateVector state = init_state(num_qubits);
  for (int d = 0; d < depth; ++d) {
    for (int q = 0; q < num_qubits; ++q) {
      GateOp op;
      op.gate = kLayer[rng.uniform_int(0, 5)];
      op.qubits = {q};
      for (int i = 0; i < gate_num_angles(op.gate); ++i) {
        op.angles.push_back(rng.uniform01() * kTau);
      }
      apply_gate_in_place(state, op);
    }
    for (int q = 0; q + 1 < num_qubits; ++q) {
      if (rng.uniform_int(0, 1) == 1) {
        GateOp op;
        op.gate = GateKind::Cx;
        op.qubits = {q, q + 1};
        apply_gate_in_place(state, op);
      }
    }
  }
  return state;
}

Report run_baseline(const Program& p, BaselineKind kind, int budget,
                    int repeats, std::uint64_t seed) {
  Rng rng(seed);
  Report report;
  report.program = p.name;
  report.seed = seed;
  report.total_sites = static_cast<int>(list_branches(p).size());
  report.termination = "budget";
  int quality_site = -1;
  std::vector<double> quality_dist;
  for (const BranchSite& site : list_branches(p)) {
    const IfStmt* stmt = find_branch(p, site.id);
    if (stmt != nullptr && std::holds_alternative<StateEqCond>(stmt->cond)) {
      quality_site = site.id;
      quality_dist = std::get<StateEqCond>(stmt->cond).dist;
      break;
    }
  }
  std::unordered_set<std::string> keys;
  int n = p.num_qubits();
  for (int i = 0; i < budget; ++i) {
    TestCase tc;
    tc.initial_state = kind == BaselineKind::Vector
                           ? random_state(n, rng)
                           : random_circuit_input(n, rng);
    for (const Param& param : p.params) {
      if (param.kind == ParamKind::ClassicalInt) {
        tc.classical[param.name] = rng.uniform_int(0, 7);
      } else if (param.kind == ParamKind::ClassicalReal) {
        tc.classical[param.name] = rng.uniform01();
      }
    }
    CaseRecord rec;
    rec.tc = tc;
    rec.origin = "random";
    rec.accepted = true;
    bool scored = false;
    for (int rep = 0; rep < repeats; ++rep) {
      Trace trace = execute_concrete(p, tc, rng);
      for (const TraceStep& step : trace.steps) {
        report.covered.insert({step.site, step.polarity});
        if (!scored && step.site == quality_site) {
          QualityEntry entry;
          entry.case_index = static_cast<int>(report.cases.size());
          entry.site = quality_site;
          entry.value = quality(step.dist, quality_dist);
          report.quality_entries.push_back(entry);
          scored = true;
        }
      }
      if (keys.insert(trace.key()).second) ++rec.new_traces;
      report.observed_results.insert(trace.result);
    }
    report.cases.push_back(std::move(rec));
  }
  report.distinct_traces = static_cast<int>(keys.size());
  report.feasible_pairs = 2 * report.total_sites;
  return report;
}

}  // namespace qct
