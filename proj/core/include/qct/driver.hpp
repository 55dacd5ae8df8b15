/**
 * Copyright 2026, the qct developers.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qct/constraint.hpp"
#include "qct/sim.hpp"
#include "qct/smt.hpp"

namespace qct {

struct DriverConfig {
  /// Solver-call budget (i_max). 0 runs only the initial input.
  int max_iterations = 50;
  /// Executions per accepted candidate (r).
  int repeats = 10;
  double delta_sat = 0.05;
  /// Solver command template; empty resolves via resolve_solver_command().
  std::string solver_command;
  double solver_timeout_seconds = 60.0;
  std::uint64_t seed = 0;
  SmtMode smt_mode = SmtMode::Integrated;
  bool emit_set_logic = true;
  /// Exclusion re-solves allowed per target before it is abandoned. Each
  /// re-solve also consumes an iteration.
  int max_exclusion_retries = 5;
  /// When nonempty, every emitted script is kept here.
  std::string keep_smt_dir;
  /// Early exit once every expected result value has been observed.
  std::optional<std::set<std::int64_t>> expected_results;
};

struct CaseRecord {
  TestCase tc;
  std::string origin;       // "initial" or "solver"
  int target_site = -1;
  int target_polarity = -1;  // 0/1; -1 when there was no target
  /// The solved constraint (solver cases only): prefix atoms aligned to
  /// their polarities plus the flipped atom. Kept so the substitution can
  /// be re-checked against the extracted input after the fact.
  std::vector<Atom> target_atoms;
  bool accepted = false;
  std::vector<Trace> traces;
  int new_traces = 0;
};

/// Quality of one accepted StateEq-targeted case: the distribution snapshot
/// at the targeted conditional scored against that condition's target.
struct QualityEntry {
  int case_index = -1;
  int site = -1;
  double value = 0.0;
};

struct Report {
  std::string program;
  std::uint64_t seed = 0;
  int total_sites = 0;
  std::string termination;  // tree-explored | iteration-cap | expected-results | budget
  int iterations = 0;

  std::vector<CaseRecord> cases;
  std::set<std::pair<int, bool>> covered;
  std::vector<std::pair<int, bool>> unsat_branches;
  std::vector<std::pair<int, bool>> timeout_branches;
  std::vector<std::pair<int, bool>> abandoned_branches;
  /// Sites never observed in any trace (unreachable when the tree is
  /// fully explored).
  std::vector<int> unreached_sites;
  int feasible_pairs = 0;

  std::vector<QualityEntry> quality_entries;
  std::set<std::int64_t> observed_results;
  int distinct_traces = 0;

  int solver_calls = 0;
  int solver_sat = 0;
  int solver_unsat = 0;
  int solver_timeouts = 0;
  int solver_errors = 0;
  double solver_seconds = 0.0;
};

/// Covered pairs over all pairs (2 per site). 1.0 for a program without
/// conditionals.
double branch_coverage(const Report& r);

/// Covered pairs over feasible pairs: all pairs minus solver-proven unsat
/// polarities minus pairs of sites that stayed unreachable in a fully
/// explored tree.
double feasible_branch_coverage(const Report& r);

/// Total variation style distance: sum_x |probs[x] - dist[x]|.
double quality(const std::vector<double>& probs,
               const std::vector<double>& dist);
double quality(const StateVector& final_state,
               const std::vector<double>& dist);

/**
 * The concolic loop: execute the all-zero input, then repeatedly pick the
 * deepest unexplored branch polarity, solve its path constraint, execute
 * the extracted input r times and fold the traces back into the fork tree.
 * Non-triggering models are excluded and re-solved (bounded per target);
 * unsat targets are recorded as bug signals. Deterministic for a fixed
 * (program, config, solver).
 */
Report run_concolic(const Program& p, const DriverConfig& config);

}  // namespace qct
