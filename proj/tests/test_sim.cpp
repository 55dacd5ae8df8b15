#include <cmath>
#include <map>
#include <string>

#include "doctest.h"
#include "qct/error.hpp"
#include "qct/ir.hpp"
#include "qct/rng.hpp"
#include "qct/sim.hpp"

using namespace qct;

namespace {

StateVector bell_pair() {
  StateVector s = init_state(2);
  apply_gate_in_place(s, {GateKind::H, {0}, {}});
  apply_gate_in_place(s, {GateKind::Cx, {0, 1}, {}});
  return s;
}

}  // namespace

TEST_CASE("init_state is |0...0>") {
  StateVector s = init_state(3);
  CHECK(s.dim() == 8);
  CHECK(s.amps[0] == Complex(1.0));
  for (std::size_t x = 1; x < 8; ++x) CHECK(s.amps[x] == Complex(0.0));
  CHECK(s.norm() == doctest::Approx(1.0));
  CHECK_THROWS_AS(init_state(kMaxQubits + 1), CapacityError);
}

TEST_CASE("hadamard splits |0> evenly") {
  StateVector s = init_state(1);
  s = apply_gate(std::move(s), {GateKind::H, {0}, {}});
  const double r = std::sqrt(0.5);
  CHECK(std::abs(s.amps[0] - Complex(r)) < 1e-15);
  CHECK(std::abs(s.amps[1] - Complex(r)) < 1e-15);
}

TEST_CASE("qubit 0 is the least significant basis bit") {
  StateVector s = init_state(2);
  s = apply_gate(std::move(s), {GateKind::X, {0}, {}});
  CHECK(std::abs(s.amps[0b01] - Complex(1.0)) < 1e-15);

  s = init_state(2);
  s = apply_gate(std::move(s), {GateKind::X, {1}, {}});
  CHECK(std::abs(s.amps[0b10] - Complex(1.0)) < 1e-15);
}

TEST_CASE("cx flips the target exactly when the control is set") {
  StateVector s = init_state(2);
  apply_gate_in_place(s, {GateKind::X, {0}, {}});        // |01> (q0 set)
  apply_gate_in_place(s, {GateKind::Cx, {0, 1}, {}});    // control q0
  CHECK(std::abs(s.amps[0b11] - Complex(1.0)) < 1e-15);

  s = init_state(2);
  apply_gate_in_place(s, {GateKind::X, {1}, {}});        // control clear
  apply_gate_in_place(s, {GateKind::Cx, {0, 1}, {}});
  CHECK(std::abs(s.amps[0b10] - Complex(1.0)) < 1e-15);
}

TEST_CASE("bell pair amplitudes and probabilities") {
  StateVector s = bell_pair();
  const double r = std::sqrt(0.5);
  CHECK(std::abs(s.amps[0] - Complex(r)) < 1e-15);
  CHECK(std::abs(s.amps[3] - Complex(r)) < 1e-15);
  CHECK(std::abs(s.amps[1]) < 1e-15);
  CHECK(std::abs(s.amps[2]) < 1e-15);

  auto full = probabilities(s);
  CHECK(full[0] == doctest::Approx(0.5));
  CHECK(full[3] == doctest::Approx(0.5));

  auto q0 = probabilities(s, {0});
  CHECK(q0.size() == 2);
  CHECK(q0[0] == doctest::Approx(0.5));
  CHECK(q0[1] == doctest::Approx(0.5));
}

TEST_CASE("gate application rejects bad operands") {
  StateVector s = init_state(2);
  CHECK_THROWS_AS(apply_gate(s, {GateKind::H, {2}, {}}), IndexError);
  CHECK_THROWS_AS(apply_gate(s, {GateKind::Cx, {0, 0}, {}}), IndexError);
}

TEST_CASE("measurement collapses and renormalizes") {
  Rng rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    auto [outcome, post] = measure_sample(bell_pair(), {0}, rng);
    REQUIRE(outcome.width == 1);
    CHECK(post.norm() == doctest::Approx(1.0));
    // Entanglement: measuring q0 decides q1 as well.
    const std::size_t basis = outcome.value == 0 ? 0 : 3;
    CHECK(std::abs(post.amps[basis]) == doctest::Approx(1.0));
  }
}

TEST_CASE("measurement is seed-deterministic and consumes one draw") {
  Rng a(11), b(11);
  auto [o1, s1] = measure_sample(bell_pair(), {0, 1}, a);
  auto [o2, s2] = measure_sample(bell_pair(), {0, 1}, b);
  CHECK(o1 == o2);
  CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("outcome packing: leftmost bit string char is qubit 0") {
  Outcome o{2, 2};  // bit 1 set = measured qubit index 1
  CHECK(o.bits() == "01");
  CHECK(outcome_bits(1, 2) == "10");
  CHECK(parse_outcome_bits("01", 2) == 2);
  CHECK(parse_outcome_bits("10", 2) == 1);
  CHECK_THROWS_AS(parse_outcome_bits("0x", 2), ValidationError);
  CHECK_THROWS_AS(parse_outcome_bits("011", 2), ValidationError);
}

TEST_CASE("classical expression evaluation promotes int to real") {
  TestCase tc;
  tc.classical["k"] = std::int64_t{3};
  tc.classical["x"] = 0.5;

  auto k = ClassicalExpr::make_name("k");
  auto x = ClassicalExpr::make_name("x");
  auto two = ClassicalExpr::int_lit(2);

  auto prod = ClassicalExpr::binary(ClassicalExpr::Kind::Mul, k, two);
  ClassicalValue v = eval_expr(*prod, tc);
  REQUIRE(std::holds_alternative<std::int64_t>(v));
  CHECK(std::get<std::int64_t>(v) == 6);

  auto mixed = ClassicalExpr::binary(ClassicalExpr::Kind::Add, k, x);
  v = eval_expr(*mixed, tc);
  REQUIRE(std::holds_alternative<double>(v));
  CHECK(std::get<double>(v) == doctest::Approx(3.5));

  CHECK(eval_comparison(std::int64_t{3}, Comparator::Gt, 2.5));
  CHECK(eval_comparison(std::int64_t{2}, Comparator::Le, std::int64_t{2}));
  CHECK(!eval_comparison(0.4, Comparator::Ge, std::int64_t{1}));
}

TEST_CASE("execute_concrete records sites, polarities and prefixes") {
  Program p = parse_program(R"(
program pick(k: int, q: qreg(1)) {
  x(q, 0);
  if k == 1 {
    h(q, 0);
    if measure(q, [0]) == ["1"] {
      return 2;
    }
    return 1;
  }
  return 0;
}
)");
  REQUIRE(list_branches(p).size() == 2);

  TestCase tc = initial_test_case(p);
  Rng rng(1);
  Trace t = execute_concrete(p, tc, rng);
  REQUIRE(t.steps.size() == 1);
  CHECK(t.steps[0].site == 0);
  CHECK(!t.steps[0].polarity);
  CHECK(t.steps[0].ops_prefix == 1);
  CHECK(t.result == 0);
  CHECK(t.ops.size() == 1);

  tc.classical["k"] = std::int64_t{1};
  Trace u = execute_concrete(p, tc, rng);
  REQUIRE(u.steps.size() == 2);
  CHECK(u.steps[0].polarity);
  CHECK(u.steps[1].site == 1);
  CHECK(u.steps[1].ops_prefix == 2);
  REQUIRE(u.steps[1].outcome.has_value());
  CHECK(u.result == (u.steps[1].polarity ? 2 : 1));

  // Same decisions, same key; a different branch changes it.
  CHECK(t.key() != u.key());

  TestCase bad;
  CHECK_THROWS_AS(execute_concrete(p, bad, rng), RuntimeTypeError);
}

TEST_CASE("distribution snapshots land on state-condition steps") {
  Program p = parse_program(R"(
program snap(q: qreg(1)) {
  h(q, 0);
  if check_state_eq(q, {"0": 0.5, "1": 0.5}, 0.1) {
    return 1;
  }
  return 0;
}
)");
  Rng rng(3);
  Trace t = execute_concrete(p, initial_test_case(p), rng);
  REQUIRE(t.steps.size() == 1);
  CHECK(t.steps[0].polarity);
  REQUIRE(t.steps[0].dist.size() == 2);
  CHECK(t.steps[0].dist[0] == doctest::Approx(0.5));
  CHECK(t.result == 1);
  REQUIRE(t.final_probs.size() == 2);
}

TEST_CASE("norm stays at one under random gate streams") {
  Rng rng(2026);
  StateVector s = init_state(3);
  for (int i = 0; i < 500; ++i) {
    const int q = static_cast<int>(rng.uniform_int(0, 2));
    switch (rng.uniform_int(0, 3)) {
      case 0: apply_gate_in_place(s, {GateKind::H, {q}, {}}); break;
      case 1:
        apply_gate_in_place(s, {GateKind::Rx, {q}, {rng.uniform01() * 6.28}});
        break;
      case 2: apply_gate_in_place(s, {GateKind::T, {q}, {}}); break;
      default:
        apply_gate_in_place(s, {GateKind::Cx, {q, (q + 1) % 3}, {}});
        break;
    }
  }
  CHECK(std::abs(s.norm() - 1.0) < 1e-12);
}
