/**
 * Copyright 2026, the qct developers.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qct/gates.hpp"
#include "qct/ir.hpp"
#include "qct/rng.hpp"

namespace qct {

/**
 * Dense statevector over `num_qubits` qubits. Basis index bit i is qubit i
 * (qubit 0 is the least significant bit), so amps[0b10] is the amplitude of
 * qubit 1 set, qubit 0 clear.
 */
struct StateVector {
  int num_qubits = 0;
  std::vector<Complex> amps;

  std::size_t dim() const { return amps.size(); }
  double norm() const;
};

/// |0...0> on n qubits. Throws CapacityError above max_qubits.
StateVector init_state(int n, int max_qubits = kMaxQubits);

/// Applies one gate, checking operand indices against the register.
StateVector apply_gate(StateVector state, const GateOp& op);

void apply_gate_in_place(StateVector& state, const GateOp& op);

/// Outcome distribution over the listed qubits (strictly ascending). Entry
/// o is the probability of the packed outcome o (bit i of o = qubits[i]).
std::vector<double> probabilities(const StateVector& state,
                                  const std::vector<int>& qubits);

/// Distribution over the full register, indexed by basis state.
std::vector<double> probabilities(const StateVector& state);

/// Packed measurement outcome over `width` measured qubits.
struct Outcome {
  std::size_t value = 0;
  int width = 0;
  std::string bits() const { return outcome_bits(value, width); }
  bool operator==(const Outcome&) const = default;
};

/// Samples one outcome over the listed qubits and collapses the state
/// (projection plus renormalization). Consumes exactly one rng draw.
std::pair<Outcome, StateVector> measure_sample(const StateVector& state,
                                               const std::vector<int>& qubits,
                                               Rng& rng);

using ClassicalValue = std::variant<std::int64_t, double>;

/// Concrete program input: one value per classical parameter plus the
/// initial register state.
struct TestCase {
  std::map<std::string, ClassicalValue> classical;
  StateVector initial_state;
};

/// All-zero classical values and |0...0>: the seed input of the search.
TestCase initial_test_case(const Program& p);

/// One conditional evaluation along a run.
struct TraceStep {
  int site = -1;
  bool polarity = false;
  /// Measure sites: the sampled outcome.
  std::optional<Outcome> outcome;
  /// StateEq/Gt/Lt sites: full-register distribution at the conditional.
  std::vector<double> dist;
  /// Gate ops executed before this conditional (prefix of Trace::ops).
  int ops_prefix = 0;
};

struct Trace {
  std::vector<TraceStep> steps;
  /// Every gate op executed, in order.
  std::vector<GateOp> ops;
  std::int64_t result = 0;
  std::vector<double> final_probs;

  /// Identity of the branching decisions plus the result; two runs with the
  /// same key drove the program through the same path.
  std::string key() const;
};

/// Runs the program on a concrete input. Measurement sampling is the only
/// random element, so the trace is a deterministic function of (program,
/// test case, rng state). Throws RuntimeTypeError when the test case does
/// not match the parameter list.
Trace execute_concrete(const Program& p, const TestCase& tc, Rng& rng);

/// Evaluates a classical expression over the test case values. Integer
/// expressions stay exact; any real operand promotes the result.
ClassicalValue eval_expr(const ClassicalExpr& e, const TestCase& tc);

/// Numeric comparison with int/real promotion.
bool eval_comparison(const ClassicalValue& lhs, Comparator cmp,
                     const ClassicalValue& rhs);

}  // namespace qct
