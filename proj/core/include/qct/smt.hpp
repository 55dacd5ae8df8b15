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

#include "qct/constraint.hpp"
#include "qct/sim.hpp"

namespace qct {

/**
 * Operation encoding. PerOp declares step amplitudes psi_k_* and one
 * equality block per operation; Integrated folds the whole prefix into
 * U_all and binds outputs with define-fun, keeping the declared variables
 * at exactly 2*2^n initial reals plus the classical symbols.
 */
enum class SmtMode { Integrated, PerOp };

/**
 * An SMT-LIB2 script in a fixed five-section layout: variables,
 * normalization, operations, path condition, commands. serialize() is
 * byte-deterministic for a given document.
 */
struct SmtDocument {
  int num_qubits = 0;
  SmtMode mode = SmtMode::Integrated;
  bool set_logic = true;

  std::vector<std::string> initial_vars;    // psi_0_<i>.r / .i
  std::vector<std::string> step_vars;       // psi_<k>_<i>.r / .i, k >= 1
  std::vector<std::string> classical_vars;  // rendered classical symbols
  std::string normalization_line;
  std::vector<std::string> operation_lines;  // asserts or define-funs
  std::vector<std::string> condition_lines;
  std::vector<std::string> exclusion_lines;

  /// Every declared variable, declaration order. define-fun outputs are
  /// bound, not declared, so they never appear here.
  std::vector<std::string> declared_vars() const;

  std::string serialize() const;
};

/**
 * Emits the path constraint. Real literals carry 17 significant digits.
 * Classical integer comparisons use gap encoding (x < c becomes
 * x <= c - 1) so midpoint extraction plus rounding stays inside the atom.
 * Quantum atom prefixes must be nested (they come from one path).
 */
SmtDocument emit_smt(const PathConstraint& pc, int num_qubits, SmtMode mode,
                     bool set_logic = true);

/// A closed interval; exact values have lo == hi.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double mid() const { return 0.5 * (lo + hi); }
};

/// Variable name -> model interval.
using Assignment = std::map<std::string, Interval>;

enum class SolverVerdict { Sat, DeltaSat, Unsat, Timeout };

struct SolverConfig {
  /// Command template; "{file}" expands to the script path, "{delta}" to
  /// delta_sat. Empty selects resolve_solver_command().
  std::string command;
  double timeout_seconds = 60.0;
  double delta_sat = 0.05;
  /// When nonempty the script is written here and kept.
  std::string keep_file;
};

struct SolveResult {
  SolverVerdict verdict = SolverVerdict::Timeout;
  Assignment assignment;
  double seconds = 0.0;
  std::string raw_output;
};

/**
 * Default solver command: QCT_SOLVER_CMD if set, then dreal on PATH, then
 * z3 on PATH, then "node <shim_hint>" when the hint names an existing file
 * and node is available. Throws SolverError when nothing resolves.
 */
std::string resolve_solver_command(const std::string& shim_hint = "");

/**
 * Writes the script, runs the solver with a wall-clock deadline and
 * classifies the outcome. Sat/DeltaSat results carry a value for every
 * declared variable (unmentioned ones default to [0, 0]). Output that fits
 * no dialect throws SolverError; a malformed model line throws
 * ModelParseError.
 */
SolveResult invoke_solver(const SmtDocument& doc, const SolverConfig& config);

/**
 * Parses solver output in either dialect: dReal interval lines
 * ("x : [lo, hi]", ENTIRE meaning unconstrained) or SMT-LIB define-fun
 * models with numeric, negated and rational values. Trailing '?' digits
 * (dReal's imprecision marker) are accepted.
 */
std::pair<SolverVerdict, Assignment> parse_model(
    const std::string& output, const std::vector<std::string>& declared);

/**
 * Interval midpoints -> test case. Classical ints round half away from
 * zero; the state normalizes to unit norm. Near-zero norm (< 1e-6) throws
 * DegenerateModelError.
 */
TestCase extract_test_case(const Assignment& assignment, const Program& p);

/**
 * Appends a box-exclusion clause over the initial-state variables:
 * at least one variable must leave [lo, hi]. Returns false (and adds
 * nothing) for an assignment with no initial-state values.
 */
bool add_exclusion(SmtDocument& doc, const Assignment& assignment);

/// Do two assignments overlap on every listed variable? Missing variables
/// default to [0, 0].
bool boxes_intersect(const Assignment& a, const Assignment& b,
                     const std::vector<std::string>& vars);

/// 17-significant-digit SMT-LIB real literal. Never uses exponent
/// notation; negatives render as (- abs).
std::string smt_real(double value);

}  // namespace qct
