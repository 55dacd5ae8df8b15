#include <map>
#include <string>
#include <vector>

#include "doctest.h"
#include "qct/constraint.hpp"
#include "qct/rng.hpp"
#include "qct/sim.hpp"
#include "qct/symbolic.hpp"

using namespace qct;

namespace {

Program superposition_gate_program() {
  return parse_program(R"(
program sup(k: int, q: qreg(1)) {
  h(q, 0);
  if measure(q, [0]) == ["0"] {
    if k == 1 {
      return 2;
    }
    return 1;
  }
  return 0;
}
)");
}

PathConstraint trace_constraint(const Program& p, const TestCase& tc,
                                std::uint64_t seed, SymbolicEnv& env) {
  Rng rng(seed);
  Trace trace = execute_concrete(p, tc, rng);
  return path_condition(trace, p, env);
}

}  // namespace

TEST_CASE("negate is an involution on every atom kind") {
  Program p = parse_program(R"(
program all(k: int, q: qreg(2)) {
  h(q, 0);
  if measure(q, [0]) == ["1"] { return 1; }
  if check_state_eq(q, {"00": 0.5, "10": 0.5}, 0.05) { return 2; }
  if check_state_gt(q, [("00", 0.2)], 0.01) { return 3; }
  if check_state_lt(q, [("00", 0.9)], 0.01) { return 4; }
  if k <= 3 { return 5; }
  return 0;
}
)");
  SymbolicEnv env = symbolize(p);
  TestCase tc = initial_test_case(p);
  Rng rng(5);
  Trace trace = execute_concrete(p, tc, rng);
  PathConstraint pc = path_condition(trace, p, env);
  REQUIRE(!pc.atoms.empty());

  for (const Atom& atom : pc.atoms) {
    Atom once = negate(atom);
    Atom twice = negate(once);
    CHECK(once.kind != atom.kind);
    CHECK(twice.kind == atom.kind);
    CHECK(twice.site == atom.site);
    CHECK(render(twice, env) == render(atom, env));
  }
}

TEST_CASE("negation pairs kinds as complements") {
  Program p = superposition_gate_program();
  SymbolicEnv env = symbolize(p);
  AmplitudeExprs exprs = amplitude_exprs({{GateKind::H, {0}, {}}}, 1);

  MeasureCond mc{{0}, {0}, true};
  Atom m = measure_constraint(exprs, {{GateKind::H, {0}, {}}}, mc, true, 0);
  CHECK(m.kind == AtomKind::MeasureIn);
  CHECK(negate(m).kind == AtomKind::MeasureNotIn);

  StateEqCond ec{{0.5, 0.5}, 0.05};
  Atom e = eq_constraint(exprs, {}, ec, true, 0);
  CHECK(e.kind == AtomKind::DistEq);
  CHECK(negate(e).kind == AtomKind::DistNeq);

  StateGtCond gc{{{1, 0.3}}, 0.01};
  Atom g = gt_constraint(exprs, {}, gc, true, 0);
  CHECK(g.kind == AtomKind::ProbGt);
  CHECK(negate(g).kind == AtomKind::ProbLe);

  // lt with polarity true is the complement of gt: a ProbLe atom.
  StateLtCond lc{{{1, 0.9}}, 0.01};
  Atom l = lt_constraint(exprs, {}, lc, true, 0);
  CHECK(l.kind == AtomKind::ProbLe);
  CHECK(negate(l).kind == AtomKind::ProbGt);
}

TEST_CASE("measure_zero_indices selects the complement outcome set") {
  // n=2, measuring qubit 0, outcome {0}: membership zeroes every basis
  // state with bit 0 set.
  auto in = measure_zero_indices(2, {0}, {0}, true);
  CHECK(in == std::vector<std::size_t>{1, 3});
  // Non-membership zeroes the listed outcomes instead.
  auto out = measure_zero_indices(2, {0}, {0}, false);
  CHECK(out == std::vector<std::size_t>{0, 2});
  // Full-register measurement of "11" (= 3).
  auto full = measure_zero_indices(2, {0, 1}, {3}, true);
  CHECK(full == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("path_condition yields one aligned atom per step") {
  Program p = superposition_gate_program();
  SymbolicEnv env = symbolize(p);
  TestCase tc = initial_test_case(p);
  tc.classical["k"] = std::int64_t{1};

  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    Rng rng(seed);
    Trace trace = execute_concrete(p, tc, rng);
    PathConstraint pc = path_condition(trace, p, env);
    REQUIRE(pc.atoms.size() == trace.steps.size());
    for (std::size_t i = 0; i < pc.atoms.size(); ++i) {
      CHECK(pc.atoms[i].site == trace.steps[i].site);
      if (pc.atoms[i].kind != AtomKind::ClassicalCmp) {
        CHECK(pc.atoms[i].exprs.prefix_ops == trace.steps[i].ops_prefix);
        CHECK(static_cast<int>(pc.atoms[i].prefix_ops.size()) ==
              trace.steps[i].ops_prefix);
      }
    }
    // Step polarity decides the atom kind at the measure site.
    CHECK(pc.atoms[0].kind == (trace.steps[0].polarity
                                   ? AtomKind::MeasureIn
                                   : AtomKind::MeasureNotIn));
  }
}

TEST_CASE("classical atoms version parameters and render readably") {
  Program p = superposition_gate_program();
  SymbolicEnv env = symbolize(p);
  TestCase tc = initial_test_case(p);
  tc.classical["k"] = std::int64_t{1};
  Rng rng(1);  // seed 1: h then measure outcome "0" first rep
  Trace trace;
  for (int tries = 0; tries < 16; ++tries) {
    trace = execute_concrete(p, tc, rng);
    if (trace.steps.size() == 2) break;
  }
  REQUIRE(trace.steps.size() == 2);
  PathConstraint pc = path_condition(trace, p, env);
  const Atom& cls = pc.atoms[1];
  REQUIRE(cls.kind == AtomKind::ClassicalCmp);
  const auto& payload = std::get<ClassicalPayload>(cls.payload);
  CHECK(payload.symbols.at("k") == "k_0");
  CHECK(render(cls, env) == "k_0 = 1");
  CHECK(render(negate(cls), env) == "k_0 ≠ 1");

  const Atom& meas = pc.atoms[0];
  const std::string text = render(meas, env);
  CHECK(text.find("sq[h(0)]") == 0);
  CHECK(text.find("∈") != std::string::npos);
  CHECK(text.find("\"0\"") != std::string::npos);
}

TEST_CASE("eval_atom honors slack around distribution boxes") {
  AmplitudeExprs id = amplitude_exprs({}, 1);
  StateEqCond cond{{0.5, 0.5}, 0.1};
  Atom atom = eq_constraint(id, {}, cond, true, 0);

  StateVector even = init_state(1);
  even.amps = {Complex(std::sqrt(0.5)), Complex(std::sqrt(0.5))};
  CHECK(eval_atom(atom, even, {}, 1e-9));

  StateVector skew = init_state(1);
  skew.amps = {Complex(std::sqrt(0.35)), Complex(std::sqrt(0.65))};
  // |0.35 - 0.5| = 0.15 > delta: fails tight, passes with 0.06 slack.
  CHECK(!eval_atom(atom, skew, {}, 1e-9));
  CHECK(eval_atom(atom, skew, {}, 0.06));
  // The complement flips both answers at tight slack.
  CHECK(eval_atom(negate(atom), skew, {}, 1e-9));

  ClassicalCond cc{ClassicalExpr::make_name("k"), Comparator::Gt,
                   ClassicalExpr::int_lit(1)};
  Program p = superposition_gate_program();
  SymbolicEnv env = symbolize(p);
  Atom cls = classical_constraint(env, p, cc, true, 1);
  std::map<std::string, ClassicalValue> vals{{"k", std::int64_t{2}}};
  CHECK(eval_atom(cls, init_state(1), vals, 0.0));
  vals["k"] = std::int64_t{1};
  CHECK(!eval_atom(cls, init_state(1), vals, 0.0));
}

TEST_CASE("fork tree explores deepest-first and settles both polarities") {
  Program p = superposition_gate_program();
  SymbolicEnv env = symbolize(p);
  ForkTree tree;
  CHECK(tree.empty());
  CHECK(!tree.select_target().has_value());

  TestCase tc = initial_test_case(p);
  tc.classical["k"] = std::int64_t{0};

  Rng rng(1);
  Trace trace = execute_concrete(p, tc, rng);
  PathConstraint pc = path_condition(trace, p, env);
  tree.update(trace, pc);
  CHECK(!tree.empty());
  CHECK(!tree.fully_explored());

  auto target = tree.select_target();
  REQUIRE(target.has_value());
  if (trace.steps.size() == 2) {
    // Deepest unexplored flip sits at the inner classical site.
    CHECK(target->site == 1);
    CHECK(target->prefix.size() == 1);
    CHECK(target->polarity != trace.steps[1].polarity);
  } else {
    CHECK(target->site == 0);
    CHECK(target->polarity != trace.steps[0].polarity);
  }

  PathConstraint tcons = tree.target_constraint(*target);
  REQUIRE(tcons.atoms.size() == target->prefix.size() + 1);

  // Unsat polarities leave the frontier.
  tree.mark_unsat(*target);
  auto next = tree.select_target();
  if (next.has_value()) {
    CHECK(!(next->site == target->site &&
            next->polarity == target->polarity &&
            next->prefix == target->prefix));
  }
  CHECK(tree.unsat_pairs().count({target->site, target->polarity}) == 1);
}

TEST_CASE("fork tree nodes are per-path, not per-site") {
  // The same site reached under both outer polarities produces two nodes.
  Program p = parse_program(R"(
program twice(k: int, j: int, q: qreg(1)) {
  if k == 1 {
    h(q, 0);
  } else {
    x(q, 0);
  }
  if j == 1 { return 1; }
  return 0;
}
)");
  SymbolicEnv env = symbolize(p);
  ForkTree tree;
  Rng rng(0);
  TestCase tc = initial_test_case(p);
  for (std::int64_t k : {0, 1}) {
    tc.classical["k"] = k;
    Trace trace = execute_concrete(p, tc, rng);
    tree.update(trace, path_condition(trace, p, env));
  }
  // Site 1 was visited with j==0 under both prefixes; both flips remain.
  int site1_targets = 0;
  ForkTree copy;  // count by draining a rebuilt tree
  for (std::int64_t k : {0, 1}) {
    tc.classical["k"] = k;
    Trace trace = execute_concrete(p, tc, rng);
    copy.update(trace, path_condition(trace, p, env));
  }
  while (auto t = copy.select_target()) {
    if (t->site == 1) ++site1_targets;
    copy.mark_unsat(*t);
  }
  CHECK(site1_targets == 2);
}

TEST_CASE("target_constraint aligns prefix and flips the tail") {
  Program p = superposition_gate_program();
  SymbolicEnv env = symbolize(p);
  ForkTree tree;
  TestCase tc = initial_test_case(p);
  tc.classical["k"] = std::int64_t{0};

  Trace trace;
  Rng rng(1);
  for (int tries = 0; tries < 16 && trace.steps.size() != 2; ++tries) {
    trace = execute_concrete(p, tc, rng);
    tree.update(trace, path_condition(trace, p, env));
  }
  REQUIRE(trace.steps.size() == 2);

  auto target = tree.select_target();
  REQUIRE(target.has_value());
  REQUIRE(target->site == 1);
  PathConstraint cons = tree.target_constraint(*target);
  REQUIRE(cons.atoms.size() == 2);
  CHECK(cons.atoms[0].kind == AtomKind::MeasureIn);  // realized "0" branch
  CHECK(cons.atoms[1].kind == AtomKind::ClassicalCmp);
  // k == 1 flipped from the observed k != 1... the flip targets equality.
  const auto& payload = std::get<ClassicalPayload>(cons.atoms[1].payload);
  CHECK(payload.cmp == (target->polarity ? Comparator::Eq : Comparator::Ne));
}

TEST_CASE("covered pairs accumulate across traces") {
  Program p = superposition_gate_program();
  SymbolicEnv env = symbolize(p);
  ForkTree tree;
  TestCase tc = initial_test_case(p);
  Rng rng(9);
  for (int i = 0; i < 30; ++i) {
    tc.classical["k"] = std::int64_t{i % 2};
    Trace trace = execute_concrete(p, tc, rng);
    tree.update(trace, path_condition(trace, p, env));
  }
  auto covered = tree.covered_pairs();
  CHECK(covered.count({0, true}) == 1);
  CHECK(covered.count({0, false}) == 1);
  CHECK(covered.count({1, true}) == 1);
  CHECK(covered.count({1, false}) == 1);
  CHECK(tree.sites_in_tree() == std::set<int>{0, 1});
  CHECK(tree.fully_explored());
  CHECK(!tree.select_target().has_value());
}
