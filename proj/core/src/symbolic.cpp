/**
 * Copyright 2026, the qct developers.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */
#include "qct/symbolic.hpp"

#include <cmath>

#include "qct/error.hpp"

namespace qct {

SymbolicQuantumObject record_op(SymbolicQuantumObject obj, const GateOp& op) {
  obj.operation_list.push_back(op);
  return obj;
}

SymbolicEnv symbolize(const Program& p) {
  SymbolicEnv env;
  for (const Param& param : p.params) {
    if (param.kind == ParamKind::QReg) {
      env.quantum.name = "s" + param.name;
      env.quantum.num_qubits = param.qubits;
    } else {
      env.classical[param.name] = ClassicalSymbol{param.name, 0};
    }
  }
  return env;
}

UnitaryMatrix identity_matrix(int n) {
  UnitaryMatrix u;
  u.num_qubits = n;
  const std::size_t dim = std::size_t{1} << n;
  u.entries.assign(dim * dim, Complex{0.0, 0.0});
  for (std::size_t i = 0; i < dim; ++i) u.entries[i * dim + i] = 1.0;
  return u;
}

UnitaryMatrix embed_gate(const GateOp& op, int n) {
  const int k = gate_num_qubits(op.gate);
  std::size_t mask = 0;
  for (int q : op.qubits) {
    if (q < 0 || q >= n) {
      throw IndexError("qubit " + std::to_string(q) + " out of range for " +
                       std::to_string(n) + " qubit(s)");
    }
    mask |= std::size_t{1} << q;
  }
  const std::vector<Complex> m = gate_matrix(op.gate, op.angles);
  const std::size_t sub = std::size_t{1} << k;
  UnitaryMatrix u;
  u.num_qubits = n;
  const std::size_t dim = std::size_t{1} << n;
  u.entries.assign(dim * dim, Complex{0.0, 0.0});
  for (std::size_t col = 0; col < dim; ++col) {
    // Local input index from the operand bits of col.
    std::size_t j = 0;
    for (int i = 0; i < k; ++i) {
      if ((col >> op.qubits[i]) & 1) j |= std::size_t{1} << i;
    }
    const std::size_t rest = col & ~mask;
    for (std::size_t r = 0; r < sub; ++r) {
      std::size_t row = rest;
      for (int i = 0; i < k; ++i) {
        if ((r >> i) & 1) row |= std::size_t{1} << op.qubits[i];
      }
      const Complex v = m[r * sub + j];
      if (v != Complex{0.0, 0.0}) u.entries[row * dim + col] = v;
    }
  }
  return u;
}

UnitaryMatrix multiply(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  if (a.num_qubits != b.num_qubits) {
    throw IndexError("matrix size mismatch");
  }
  UnitaryMatrix out;
  out.num_qubits = a.num_qubits;
  const std::size_t dim = a.dim();
  out.entries.assign(dim * dim, Complex{0.0, 0.0});
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t k = 0; k < dim; ++k) {
      const Complex ark = a.entries[r * dim + k];
      if (ark == Complex{0.0, 0.0}) continue;
      for (std::size_t c = 0; c < dim; ++c) {
        out.entries[r * dim + c] += ark * b.entries[k * dim + c];
      }
    }
  }
  return out;
}

UnitaryMatrix integrate_operations(const std::vector<GateOp>& ops, int n) {
  UnitaryMatrix u = identity_matrix(n);
  for (const GateOp& op : ops) {
    u = multiply(embed_gate(op, n), u);
  }
  return u;
}

double max_unitarity_defect(const UnitaryMatrix& u) {
  const std::size_t dim = u.dim();
  double worst = 0.0;
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      Complex acc{0.0, 0.0};
      for (std::size_t k = 0; k < dim; ++k) {
        acc += std::conj(u.entries[k * dim + r]) * u.entries[k * dim + c];
      }
      if (r == c) acc -= 1.0;
      worst = std::max(worst, std::abs(acc));
    }
  }
  return worst;
}

Complex AmplitudeExprs::substitute_amp(std::size_t x,
                                       const StateVector& initial) const {
  const std::size_t d = dim();
  double re = 0.0;
  double im = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    const double aj = initial.amps[j].real();
    const double bj = initial.amps[j].imag();
    re += a[x * d + j] * aj - b[x * d + j] * bj;
    im += b[x * d + j] * aj + a[x * d + j] * bj;
  }
  return Complex{re, im};
}

StateVector AmplitudeExprs::substitute(const StateVector& initial) const {
  if (initial.num_qubits != num_qubits) {
    throw IndexError("state size mismatch");
  }
  StateVector out;
  out.num_qubits = num_qubits;
  out.amps.resize(dim());
  for (std::size_t x = 0; x < dim(); ++x) {
    out.amps[x] = substitute_amp(x, initial);
  }
  return out;
}

AmplitudeExprs amplitude_exprs(const std::vector<GateOp>& ops, int n) {
  const UnitaryMatrix u = integrate_operations(ops, n);
  AmplitudeExprs e;
  e.num_qubits = n;
  e.prefix_ops = static_cast<int>(ops.size());
  const std::size_t dim = u.dim();
  e.a.resize(dim * dim);
  e.b.resize(dim * dim);
  for (std::size_t i = 0; i < dim * dim; ++i) {
    e.a[i] = u.entries[i].real();
    e.b[i] = u.entries[i].imag();
  }
  return e;
}

}  // namespace qct
