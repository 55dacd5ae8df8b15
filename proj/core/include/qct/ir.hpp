/**
 * Copyright 2026, the qct developers.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qct/gates.hpp"

namespace qct {

struct SourceSpan {
  int line = 0;
  int column = 0;
};

enum class ParamKind { ClassicalInt, ClassicalReal, QReg };

struct Param {
  std::string name;
  ParamKind kind;
  int qubits = 0;  // QReg only
};

/**
 * Classical expression tree. Nodes are immutable and shared, so copies of
 * statements stay cheap.
 */
struct ClassicalExpr;
using ClassicalExprPtr = std::shared_ptr<const ClassicalExpr>;

struct ClassicalExpr {
  enum class Kind { IntLit, RealLit, Name, Neg, Add, Sub, Mul };
  Kind kind;
  std::int64_t int_value = 0;
  double real_value = 0.0;
  std::string name;
  ClassicalExprPtr lhs;  // Neg: operand
  ClassicalExprPtr rhs;

  static ClassicalExprPtr int_lit(std::int64_t v);
  static ClassicalExprPtr real_lit(double v);
  static ClassicalExprPtr make_name(std::string n);
  static ClassicalExprPtr neg(ClassicalExprPtr e);
  static ClassicalExprPtr binary(Kind k, ClassicalExprPtr l,
                                 ClassicalExprPtr r);
};

enum class Comparator { Eq, Ne, Lt, Le, Gt, Ge };

std::string_view comparator_token(Comparator c);
Comparator negate_comparator(Comparator c);

struct ClassicalCond {
  ClassicalExprPtr lhs;
  Comparator cmp;
  ClassicalExprPtr rhs;
};

/// measure(qreg, Q_m) ==/!= O_r. Qubits are strictly ascending register
/// indices; outcomes are packed over the measured qubits (bit i of the
/// packed value = measured qubit Q_m[i], i.e. the leftmost character of the
/// outcome string is the lowest-indexed measured qubit).
struct MeasureCond {
  std::vector<int> qubits;
  std::vector<std::size_t> outcomes;
  bool in;  // true: ==, membership; false: !=, non-membership
};

/// check_state_eq(qreg, D, delta): full-register outcome distribution within
/// delta of D, entry-wise. `dist[a]` is keyed by basis index a.
struct StateEqCond {
  std::vector<double> dist;
  double delta;
};

struct ProbBound {
  std::size_t outcome;  // basis index over the full register
  double probability;
};

/// check_state_gt(qreg, P, delta): every listed outcome probability
/// strictly above its bound.
struct StateGtCond {
  std::vector<ProbBound> bounds;
  double delta;
};

/// check_state_lt(qreg, P, delta): every listed outcome probability
/// strictly below its bound.
struct StateLtCond {
  std::vector<ProbBound> bounds;
  double delta;
};

using Cond =
    std::variant<ClassicalCond, MeasureCond, StateEqCond, StateGtCond,
                 StateLtCond>;

struct Stmt;
using Block = std::vector<Stmt>;

struct IfStmt {
  Cond cond;
  Block then_block;
  Block else_block;
  SourceSpan span;
  int site_id = -1;  // pre-order id, assigned by assign_branch_sites
};

struct ReturnStmt {
  ClassicalExprPtr value;
};

struct Stmt {
  std::variant<GateOp, IfStmt, ReturnStmt> node;
  SourceSpan span;
};

/// One branch site per conditional, numbered pre-order.
struct BranchSite {
  int id;
  SourceSpan span;
};

struct Program {
  std::string name;
  std::vector<Param> params;
  Block body;
  /// Optional expected final distribution, keyed by basis index.
  std::optional<std::vector<double>> reference_dist;

  int num_qubits() const;
  const Param* qreg_param() const;
  const Param* find_param(std::string_view name) const;
};

/// Simulator capacity; init_state and validation both enforce it.
inline constexpr int kMaxQubits = 12;

/// Maximum conditional nesting depth accepted by validation.
inline constexpr int kMaxNestingDepth = 8;

/**
 * Parse program text. Grammar or binding failures throw SyntaxError;
 * statically invalid programs (see validate_program) throw ValidationError
 * with the first issue. The returned program has branch sites assigned.
 */
Program parse_program(std::string_view text);

struct ValidationIssue {
  std::string message;
  SourceSpan span;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

/// Static checks on an already-built program: operand ranges, distribution
/// normalization, measurable-outcome sanity, return typing, nesting depth.
ValidationReport validate_program(const Program& p);

/// Pre-order site ids written into every IfStmt. parse_program calls this;
/// hand-built programs must call it before execution.
void assign_branch_sites(Program& p);

/// Branch sites in pre-order. Recomputed from structure, so it is stable
/// across re-parses of identical text.
std::vector<BranchSite> list_branches(const Program& p);

/// Conditional with the given pre-order site id, or null.
const IfStmt* find_branch(const Program& p, int site_id);

/// Canonical program text. parse(unparse(parse(t))) is structurally equal
/// to parse(t); numeric literals survive exactly (shortest round-trip form).
std::string unparse(const Program& p);

/// Infers int/real for a classical expression over the program's parameters.
/// Returns true when the expression is integer-typed.
bool expr_is_int(const ClassicalExpr& e, const Program& p);

/// Text form of a classical expression, minimal parentheses.
std::string render_expr(const ClassicalExpr& e);

/// Outcome bitstring of `value` over `width` bits, qubit 0 leftmost.
std::string outcome_bits(std::size_t value, int width);

/// Inverse of outcome_bits. Throws ValidationError on non-binary chars or
/// length mismatch when width >= 0.
std::size_t parse_outcome_bits(std::string_view bits, int width = -1);

}  // namespace qct
