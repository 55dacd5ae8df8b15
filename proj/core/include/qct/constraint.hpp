/**
 * Copyright 2026, the qct developers.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */
#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "qct/ir.hpp"
#include "qct/sim.hpp"
#include "qct/symbolic.hpp"

namespace qct {

/**
 * Atom kinds over the symbolic state at one branch site. Quantum kinds come
 * in complement pairs (In/NotIn, Eq/Neq, Gt/Le); a classical comparison
 * negates by flipping its comparator.
 */
enum class AtomKind {
  MeasureIn,
  MeasureNotIn,
  DistEq,
  DistNeq,
  ProbGt,
  ProbLe,
  ClassicalCmp,
};

struct MeasurePayload {
  std::vector<int> qubits;
  std::vector<std::size_t> outcomes;
};

struct DistPayload {
  std::vector<double> dist;
  double delta;
};

/// Raw bounds; the tolerance is applied at emission (> p - delta for Gt,
/// <= p + delta for Le), so negation shares the payload.
struct ProbPayload {
  std::vector<ProbBound> bounds;
  double delta;
};

struct ClassicalPayload {
  ClassicalExprPtr lhs;
  Comparator cmp;
  ClassicalExprPtr rhs;
  bool int_context;
  /// Parameter name -> rendered symbol ("alice" -> "alice_0").
  std::map<std::string, std::string> symbols;
};

using AtomPayload =
    std::variant<MeasurePayload, DistPayload, ProbPayload, ClassicalPayload>;

struct Atom {
  AtomKind kind;
  int site = -1;
  /// Symbolic amplitudes at the site (quantum kinds; unused for classical).
  AmplitudeExprs exprs;
  /// Operations folded into exprs, in execution order.
  std::vector<GateOp> prefix_ops;
  AtomPayload payload;
};

/// Logical complement. An involution: negate(negate(a)) == a.
Atom negate(const Atom& a);

/// Basis indices over n qubits whose packed outcome on `qubits` the
/// constraint forces to zero amplitude. MeasureIn zeroes everything outside
/// the outcome list; MeasureNotIn zeroes the listed outcomes.
std::vector<std::size_t> measure_zero_indices(int n,
                                              const std::vector<int>& qubits,
                                              const std::vector<std::size_t>&
                                                  outcomes,
                                              bool in);

Atom measure_constraint(AmplitudeExprs exprs, std::vector<GateOp> prefix,
                        const MeasureCond& cond, bool polarity, int site);
Atom eq_constraint(AmplitudeExprs exprs, std::vector<GateOp> prefix,
                   const StateEqCond& cond, bool polarity, int site);
Atom gt_constraint(AmplitudeExprs exprs, std::vector<GateOp> prefix,
                   const StateGtCond& cond, bool polarity, int site);
Atom lt_constraint(AmplitudeExprs exprs, std::vector<GateOp> prefix,
                   const StateLtCond& cond, bool polarity, int site);

/// Throws UnboundSymbolError when an expression name has no symbol in env.
Atom classical_constraint(const SymbolicEnv& env, const Program& p,
                          const ClassicalCond& cond, bool polarity, int site);

/// Conjunction of atoms in encounter order plus the trace they came from.
struct PathConstraint {
  std::vector<Atom> atoms;
  Trace trace;
};

/// One atom per trace step, in encounter order, each over the amplitude
/// expressions of its gate prefix.
PathConstraint path_condition(const Trace& trace, const Program& p,
                              const SymbolicEnv& env);

/// Human-readable atom ("alice_0 != 1" with real comparison glyphs,
/// "sqc[h(1)][1] in [\"0\"]" with membership glyphs).
std::string render(const Atom& a, const SymbolicEnv& env);

/// Conjunction text: classical atoms first, then quantum atoms, each group
/// in encounter order, joined with the conjunction glyph. Empty renders as
/// "true".
std::string render(const PathConstraint& pc, const SymbolicEnv& env);

/**
 * Does (initial state, classical values) satisfy the atom's solver-side
 * constraint? Quantum kinds substitute the initial state into the atom's
 * amplitude expressions; `slack` loosens every bound (pass the solver's
 * delta for delta-sat models, a small epsilon for exact ones).
 */
bool eval_atom(const Atom& a, const StateVector& initial,
               const std::map<std::string, ClassicalValue>& classical,
               double slack);

bool eval_path_constraint(const PathConstraint& pc, const StateVector& initial,
                          const std::map<std::string, ClassicalValue>&
                              classical,
                          double slack);

/**
 * Execution fork tree. Nodes mirror trace positions: the node at depth d
 * under polarities [p_0 .. p_{d-1}] is the (d+1)-th conditional on that
 * path. Each node stores its atom in true-polarity form and per-polarity
 * exploration flags. Single-owner: not thread safe.
 */
class ForkTree {
 public:
  struct Node {
    int site = -1;
    std::optional<Atom> atom_true;
    std::array<bool, 2> explored{{false, false}};
    std::array<bool, 2> unsat{{false, false}};
    std::array<bool, 2> abandoned{{false, false}};
    std::array<std::unique_ptr<Node>, 2> child;

    bool settled(bool polarity) const {
      const int i = polarity ? 1 : 0;
      return explored[i] || unsat[i] || abandoned[i];
    }
  };

  /// A frontier entry: flip the final polarity after realizing the prefix.
  struct Target {
    std::vector<bool> prefix;  // realized polarities, root downward
    int site = -1;
    bool polarity = false;  // the flipped, yet-unexplored polarity
  };

  /// Folds one executed trace and its path constraint into the tree.
  /// Atom count must match step count.
  void update(const Trace& trace, const PathConstraint& pc);

  /// Deepest unexplored polarity along the most recent trace; falls back to
  /// the deepest frontier entry anywhere in the tree. Unsat and abandoned
  /// polarities are never selected. Empty when the tree is fully explored.
  std::optional<Target> select_target() const;

  /// Prefix atoms aligned to their realized polarities plus the final atom
  /// aligned to the flipped polarity.
  PathConstraint target_constraint(const Target& target) const;

  void mark_unsat(const Target& target);
  void mark_abandoned(const Target& target);

  /// Every node has both polarities explored, unsat or abandoned.
  bool fully_explored() const;

  bool empty() const { return root_ == nullptr; }

  std::set<std::pair<int, bool>> covered_pairs() const;
  std::set<std::pair<int, bool>> unsat_pairs() const;
  std::set<std::pair<int, bool>> abandoned_pairs() const;
  std::set<int> sites_in_tree() const;

 private:
  Node* walk(const std::vector<bool>& prefix) const;

  std::unique_ptr<Node> root_;
  std::vector<std::pair<int, bool>> last_trace_;
};

}  // namespace qct
