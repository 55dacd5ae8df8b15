/**
 * Copyright 2026, the qct developers.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qct {

using Complex = std::complex<double>;

enum class GateKind {
  X, Y, Z, H, S, Sdg, T, Tdg, Rx, Ry, Rz, P,
  Cx, Cy, Cz, Ch, Crz, Swap, Ccx, Cswap,
};

/// One gate application. `qubits[i]` is the register index bound to local
/// bit i of the gate matrix; for controlled gates controls come first.
struct GateOp {
  GateKind gate;
  std::vector<int> qubits;
  std::vector<double> angles;
};

/// Lower-case mnemonic as it appears in program text ("x", "sdg", "crz").
std::string_view gate_name(GateKind kind);

/// Inverse of gate_name. Empty for an unknown mnemonic.
std::optional<GateKind> gate_from_name(std::string_view name);

/// Number of qubit operands (1, 2 or 3).
int gate_num_qubits(GateKind kind);

/// Number of angle parameters (0 or 1).
int gate_num_angles(GateKind kind);

/**
 * Dense matrix of the gate on its local qubits, row-major, dimension
 * 2^k x 2^k for a k-qubit gate. Local basis index bit i corresponds to
 * operand `qubits[i]`, so column c is the input |b_{k-1} ... b_0> with
 * b_i = bit i of c.
 */
std::vector<Complex> gate_matrix(GateKind kind,
                                 const std::vector<double>& angles);

/// "h(1)", "rz(0,0.5)", "cx(0,1)": mnemonic plus comma-joined operands,
/// angles rendered shortest-round-trip.
std::string render_op(const GateOp& op);

/// "['x(1)', 'z(1)', 'h(1)']": quoted render_op forms, comma+space joined.
std::string render_operation_list(const std::vector<GateOp>& ops);

/// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double value);

}  // namespace qct
