/**
 * Copyright 2026, the qct developers.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */
#pragma once

#include <map>
#include <string>
#include <vector>

#include "qct/gates.hpp"
#include "qct/ir.hpp"
#include "qct/sim.hpp"

namespace qct {

/// Versioned classical symbol; renders as name_version ("alice_0").
struct ClassicalSymbol {
  std::string base;
  int version = 0;
  std::string rendered() const {
    return base + "_" + std::to_string(version);
  }
};

/**
 * Symbolic stand-in for the quantum register: a name plus the list of
 * operations applied so far. Parameters never mutate, so the initial
 * amplitudes stay the solver variables and the list fully determines the
 * current symbolic state.
 */
struct SymbolicQuantumObject {
  std::string name;
  int num_qubits = 0;
  std::vector<GateOp> operation_list;
};

/// Appends one operation (value-returning; the input is unchanged).
SymbolicQuantumObject record_op(SymbolicQuantumObject obj, const GateOp& op);

struct SymbolicEnv {
  std::map<std::string, ClassicalSymbol> classical;
  SymbolicQuantumObject quantum;
};

/// Fresh symbols for every parameter: version 0 classical symbols and an
/// empty quantum object named "s" + the register parameter name.
SymbolicEnv symbolize(const Program& p);

/// Dense 2^n x 2^n row-major unitary.
struct UnitaryMatrix {
  int num_qubits = 0;
  std::vector<Complex> entries;

  std::size_t dim() const { return std::size_t{1} << num_qubits; }
  Complex at(std::size_t row, std::size_t col) const {
    return entries[row * dim() + col];
  }
};

UnitaryMatrix identity_matrix(int n);

/// Gate embedded into the full register: I everywhere except the operand
/// qubits.
UnitaryMatrix embed_gate(const GateOp& op, int n);

/// Matrix product a*b (b applied first when composing operators).
UnitaryMatrix multiply(const UnitaryMatrix& a, const UnitaryMatrix& b);

/**
 * U_all = U_m ... U_2 U_1 for the operation list [U_1, ..., U_m]. This is
 * an independent route to the final state: it never touches the simulator's
 * masked per-gate updates.
 */
UnitaryMatrix integrate_operations(const std::vector<GateOp>& ops, int n);

/// Largest entry magnitude of U^dagger U - I; zero for an exact unitary.
double max_unitarity_defect(const UnitaryMatrix& u);

/**
 * Closed-form final amplitudes over symbolic initial amplitudes a_j + i b_j:
 * with U_all = A + iB,
 *   re_x = sum_j A[x][j] a_j - B[x][j] b_j
 *   im_x = sum_j B[x][j] a_j + A[x][j] b_j
 * Exactly 2*2^n real variables regardless of the operation count.
 */
struct AmplitudeExprs {
  int num_qubits = 0;
  int prefix_ops = 0;        // operations folded into the matrices
  std::vector<double> a;     // row-major Re(U_all)
  std::vector<double> b;     // row-major Im(U_all)

  std::size_t dim() const { return std::size_t{1} << num_qubits; }
  double a_at(std::size_t row, std::size_t col) const {
    return a[row * dim() + col];
  }
  double b_at(std::size_t row, std::size_t col) const {
    return b[row * dim() + col];
  }

  /// Final amplitude x for a concrete initial state.
  Complex substitute_amp(std::size_t x, const StateVector& initial) const;

  /// Full final state for a concrete initial state.
  StateVector substitute(const StateVector& initial) const;
};

/// Amplitude expressions after the first `ops.size()` operations.
AmplitudeExprs amplitude_exprs(const std::vector<GateOp>& ops, int n);

}  // namespace qct
