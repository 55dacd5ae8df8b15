/**
 * Copyright 2026, the qct developers.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */
#include "qct/gates.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "qct/error.hpp"

namespace qct {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInvSqrt2 = 0.70710678118654752440;

struct GateInfo {
  GateKind kind;
  std::string_view name;
  int qubits;
  int angles;
};

constexpr std::array<GateInfo, 20> kGateTable{{
    {GateKind::X, "x", 1, 0},       {GateKind::Y, "y", 1, 0},
    {GateKind::Z, "z", 1, 0},       {GateKind::H, "h", 1, 0},
    {GateKind::S, "s", 1, 0},       {GateKind::Sdg, "sdg", 1, 0},
    {GateKind::T, "t", 1, 0},       {GateKind::Tdg, "tdg", 1, 0},
    {GateKind::Rx, "rx", 1, 1},     {GateKind::Ry, "ry", 1, 1},
    {GateKind::Rz, "rz", 1, 1},     {GateKind::P, "p", 1, 1},
    {GateKind::Cx, "cx", 2, 0},     {GateKind::Cy, "cy", 2, 0},
    {GateKind::Cz, "cz", 2, 0},     {GateKind::Ch, "ch", 2, 0},
    {GateKind::Crz, "crz", 2, 1},   {GateKind::Swap, "swap", 2, 0},
    {GateKind::Ccx, "ccx", 3, 0},   {GateKind::Cswap, "cswap", 3, 0},
}};

const GateInfo& info(GateKind kind) {
  return kGateTable[static_cast<std::size_t>(kind)];
}

std::vector<Complex> single(Complex m00, Complex m01, Complex m10,
                            Complex m11) {
  return {m00, m01, m10, m11};
}

/// Controlled version of a single-qubit matrix. Local bit 0 is the control,
/// bit 1 the target, so index j = control + 2*target.
std::vector<Complex> controlled(const std::vector<Complex>& u) {
  std::vector<Complex> m(16, Complex{0.0, 0.0});
  for (int t_out = 0; t_out < 2; ++t_out) {
    for (int t_in = 0; t_in < 2; ++t_in) {
      // control = 0: identity on the target.
      if (t_out == t_in) m[(2 * t_out + 0) * 4 + (2 * t_in + 0)] = 1.0;
      // control = 1: u on the target.
      m[(2 * t_out + 1) * 4 + (2 * t_in + 1)] = u[t_out * 2 + t_in];
    }
  }
  return m;
}

}  // namespace

std::string_view gate_name(GateKind kind) { return info(kind).name; }

std::optional<GateKind> gate_from_name(std::string_view name) {
  for (const auto& g : kGateTable) {
    if (g.name == name) return g.kind;
  }
  return std::nullopt;
}

int gate_num_qubits(GateKind kind) { return info(kind).qubits; }

int gate_num_angles(GateKind kind) { return info(kind).angles; }

std::vector<Complex> gate_matrix(GateKind kind,
                                 const std::vector<double>& angles) {
  if (static_cast<int>(angles.size()) != gate_num_angles(kind)) {
    throw ValidationError("gate " + std::string(gate_name(kind)) +
                          " expects " + std::to_string(gate_num_angles(kind)) +
                          " angle(s), got " + std::to_string(angles.size()));
  }
  const Complex i{0.0, 1.0};
  switch (kind) {
    case GateKind::X:
      return single(0, 1, 1, 0);
    case GateKind::Y:
      return single(0, -i, i, 0);
    case GateKind::Z:
      return single(1, 0, 0, -1);
    case GateKind::H:
      return single(kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2);
    case GateKind::S:
      return single(1, 0, 0, i);
    case GateKind::Sdg:
      return single(1, 0, 0, -i);
    case GateKind::T:
      return single(1, 0, 0, std::exp(i * (kPi / 4.0)));
    case GateKind::Tdg:
      return single(1, 0, 0, std::exp(-i * (kPi / 4.0)));
    case GateKind::Rx: {
      const double h = angles[0] / 2.0;
      return single(std::cos(h), -i * std::sin(h), -i * std::sin(h),
                    std::cos(h));
    }
    case GateKind::Ry: {
      const double h = angles[0] / 2.0;
      return single(std::cos(h), -std::sin(h), std::sin(h), std::cos(h));
    }
    case GateKind::Rz: {
      const double h = angles[0] / 2.0;
      return single(std::exp(-i * h), 0, 0, std::exp(i * h));
    }
    case GateKind::P:
      return single(1, 0, 0, std::exp(i * angles[0]));
    case GateKind::Cx:
      return controlled(gate_matrix(GateKind::X, {}));
    case GateKind::Cy:
      return controlled(gate_matrix(GateKind::Y, {}));
    case GateKind::Cz:
      return controlled(gate_matrix(GateKind::Z, {}));
    case GateKind::Ch:
      return controlled(gate_matrix(GateKind::H, {}));
    case GateKind::Crz:
      return controlled(gate_matrix(GateKind::Rz, angles));
    case GateKind::Swap: {
      std::vector<Complex> m(16, Complex{0.0, 0.0});
      m[0 * 4 + 0] = 1.0;
      m[1 * 4 + 2] = 1.0;  // |a=1,b=0> <- |a=0,b=1>
      m[2 * 4 + 1] = 1.0;
      m[3 * 4 + 3] = 1.0;
      return m;
    }
    case GateKind::Ccx: {
      std::vector<Complex> m(64, Complex{0.0, 0.0});
      for (std::size_t j = 0; j < 8; ++j) {
        // Flip bit 2 (target) when both controls (bits 0 and 1) are set.
        const std::size_t out = (j & 3) == 3 ? j ^ 4 : j;
        m[out * 8 + j] = 1.0;
      }
      return m;
    }
    case GateKind::Cswap: {
      std::vector<Complex> m(64, Complex{0.0, 0.0});
      for (std::size_t j = 0; j < 8; ++j) {
        std::size_t out = j;
        if (j & 1) {  // control set: swap bits 1 and 2
          const std::size_t a = (j >> 1) & 1;
          const std::size_t b = (j >> 2) & 1;
          out = (j & 1) | (b << 1) | (a << 2);
        }
        m[out * 8 + j] = 1.0;
      }
      return m;
    }
  }
  throw ValidationError("unknown gate kind");
}

std::string format_double(double value) {
  std::array<char, 64> buf;
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) throw Error("double formatting failed");
  return std::string(buf.data(), ptr);
}

std::string render_op(const GateOp& op) {
  std::string out{gate_name(op.gate)};
  out += '(';
  bool first = true;
  for (int q : op.qubits) {
    if (!first) out += ',';
    out += std::to_string(q);
    first = false;
  }
  for (double a : op.angles) {
    out += ',';
    out += format_double(a);
  }
  out += ')';
  return out;
}

std::string render_operation_list(const std::vector<GateOp>& ops) {
  std::string out = "[";
  for (std::size_t k = 0; k < ops.size(); ++k) {
    if (k) out += ", ";
    out += '\'';
    out += render_op(ops[k]);
    out += '\'';
  }
  out += ']';
  return out;
}

}  // namespace qct
