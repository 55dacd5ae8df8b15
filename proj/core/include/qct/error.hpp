/**
 * Copyright 2026, the qct developers.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace qct {

/// Base class for every error thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed program text. Carries a 1-based source position.
struct SyntaxError : Error {
  SyntaxError(const std::string& msg, int line, int column)
      : Error(msg + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line(line),
        column(column) {}
  int line;
  int column;
};

/// Well-formed text that violates a static rule (bad qubit index,
/// non-normalized target distribution, duplicate parameter, ...).
struct ValidationError : Error {
  using Error::Error;
};

/// Requested register size exceeds the simulator capacity.
struct CapacityError : Error {
  using Error::Error;
};

/// Qubit or basis-state index out of range for the register.
struct IndexError : Error {
  using Error::Error;
};

/// Runtime value does not match the declared parameter type.
struct RuntimeTypeError : Error {
  using Error::Error;
};

/// Name referenced without a binding in the symbolic environment.
struct UnboundSymbolError : Error {
  using Error::Error;
};

/// Solver output that does not parse as a model in the selected dialect.
struct ModelParseError : Error {
  using Error::Error;
};

/// Extracted initial state has (near-)zero norm and cannot be normalized.
struct DegenerateModelError : Error {
  using Error::Error;
};

/// Solver process failed in a way that is neither sat, unsat, nor timeout.
struct SolverError : Error {
  using Error::Error;
};

}  // namespace qct
