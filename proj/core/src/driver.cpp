/**
 * Copyright 2026, the qct developers.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */
#include "qct/driver.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <unordered_set>

#include "qct/error.hpp"
#include "qct/rng.hpp"
#include "qct/symbolic.hpp"

namespace qct {

double branch_coverage(const Report& r) {
  if (r.total_sites == 0) return 1.0;
  return static_cast<double>(r.covered.size()) /
         static_cast<double>(2 * r.total_sites);
}

double feasible_branch_coverage(const Report& r) {
  if (r.feasible_pairs == 0) return 1.0;
  return static_cast<double>(r.covered.size()) /
         static_cast<double>(r.feasible_pairs);
}

double quality(const std::vector<double>& probs,
               const std::vector<double>& dist) {
  double q = 0.0;
  std::size_t dim = std::max(probs.size(), dist.size());
  for (std::size_t x = 0; x < dim; ++x) {
    double p = x < probs.size() ? probs[x] : 0.0;
    double d = x < dist.size() ? dist[x] : 0.0;
    q += std::abs(p - d);
  }
  return q;
}

double quality(const StateVector& final_state,
               const std::vector<double>& dist) {
  return quality(probabilities(final_state), dist);
}

namespace {

bool realizes_target(const Trace& trace, const ForkTree::Target& target) {
  std::size_t depth = target.prefix.size();
  if (trace.steps.size() <= depth) return false;
  for (std::size_t i = 0; i < depth; ++i) {
    if (trace.steps[i].polarity != target.prefix[i]) return false;
  }
  return trace.steps[depth].site == target.site &&
         trace.steps[depth].polarity == target.polarity;
}

struct Loop {
  const Program& p;
  const DriverConfig& config;
  SolverConfig solver_config;
  SymbolicEnv env;
  ForkTree tree;
  Report report;
  Rng rng;
  std::unordered_set<std::string> trace_keys;
  int emitted_scripts = 0;

  Loop(const Program& prog, const DriverConfig& cfg)
      : p(prog), config(cfg), env(symbolize(prog)), rng(cfg.seed) {
    solver_config.command = cfg.solver_command.empty()
                                ? resolve_solver_command()
                                : cfg.solver_command;
    solver_config.timeout_seconds = cfg.solver_timeout_seconds;
    solver_config.delta_sat = cfg.delta_sat;
    report.program = p.name;
    report.seed = cfg.seed;
    report.total_sites = static_cast<int>(list_branches(p).size());
  }

  bool expected_done() const {
    if (!config.expected_results) return false;
    for (std::int64_t v : *config.expected_results) {
      if (!report.observed_results.count(v)) return false;
    }
    return true;
  }

  CaseRecord run_case(const TestCase& tc, const ForkTree::Target* target,
                      const std::string& origin) {
    CaseRecord rec;
    rec.tc = tc;
    rec.origin = origin;
    if (target != nullptr) {
      rec.target_site = target->site;
      rec.target_polarity = target->polarity ? 1 : 0;
    }
    rec.accepted = target == nullptr;
    for (int rep = 0; rep < config.repeats; ++rep) {
      Trace trace = execute_concrete(p, tc, rng);
      PathConstraint pc = path_condition(trace, p, env);
      tree.update(trace, pc);
      if (target != nullptr && realizes_target(trace, *target)) {
        rec.accepted = true;
      }
      if (trace_keys.insert(trace.key()).second) ++rec.new_traces;
      report.observed_results.insert(trace.result);
      rec.traces.push_back(std::move(trace));
    }
    return rec;
  }

  /// Quality is recorded only when the solved target was the true polarity
  /// of a StateEq conditional; the snapshot comes from the first trace that
  /// realized the target.
  void record_quality(const CaseRecord& rec, const ForkTree::Target& target,
                      const PathConstraint& pc) {
    if (!target.polarity || pc.atoms.empty()) return;
    const Atom& atom = pc.atoms.back();
    if (atom.kind != AtomKind::DistEq) return;
    const auto& payload = std::get<DistPayload>(atom.payload);
    for (const Trace& trace : rec.traces) {
      if (!realizes_target(trace, target)) continue;
      const TraceStep& step = trace.steps[target.prefix.size()];
      QualityEntry entry;
      entry.case_index = static_cast<int>(report.cases.size()) - 1;
      entry.site = target.site;
      entry.value = quality(step.dist, payload.dist);
      report.quality_entries.push_back(entry);
      return;
    }
  }

  SolveResult solve(SmtDocument& doc, const ForkTree::Target& target) {
    if (!config.keep_smt_dir.empty()) {
      std::filesystem::create_directories(config.keep_smt_dir);
      std::filesystem::path file =
          std::filesystem::path(config.keep_smt_dir) /
          ("target_" + std::to_string(target.site) +
           (target.polarity ? "t" : "f") + "_" +
           std::to_string(++emitted_scripts) + ".smt2");
      std::ofstream out(file);
      out << doc.serialize();
      out.close();
      SolverConfig keep = solver_config;
      keep.keep_file = file.string();
      return invoke_solver(doc, keep);
    }
    return invoke_solver(doc, solver_config);
  }

  void note_result(const SolveResult& res) {
    ++report.solver_calls;
    report.solver_seconds += res.seconds;
    switch (res.verdict) {
      case SolverVerdict::Sat:
      case SolverVerdict::DeltaSat:
        ++report.solver_sat;
        break;
      case SolverVerdict::Unsat:
        ++report.solver_unsat;
        break;
      case SolverVerdict::Timeout:
        ++report.solver_timeouts;
        break;
    }
  }

  /// One target: solve, execute, exclude-and-retry on rejected models.
  /// Returns false when the iteration budget ran out mid-target.
  bool attempt(const ForkTree::Target& target) {
    PathConstraint pc = tree.target_constraint(target);
    SmtDocument doc = emit_smt(pc, p.num_qubits(), config.smt_mode,
                               config.emit_set_logic);
    std::vector<Assignment> excluded;
    int retries = 0;
    std::pair<int, bool> pair{target.site, target.polarity};
    for (;;) {
      if (report.iterations >= config.max_iterations) return false;
      ++report.iterations;
      SolveResult res;
      try {
        res = solve(doc, target);
      } catch (const SolverError&) {
        ++report.solver_errors;
        tree.mark_abandoned(target);
        report.abandoned_branches.push_back(pair);
        return true;
      }
      note_result(res);
      if (res.verdict == SolverVerdict::Unsat) {
        tree.mark_unsat(target);
        report.unsat_branches.push_back(pair);
        return true;
      }
      if (res.verdict == SolverVerdict::Timeout) {
        tree.mark_abandoned(target);
        report.timeout_branches.push_back(pair);
        return true;
      }
      // A model that repeats an excluded box means the exclusion asserts
      // are not being honored; retrying would not terminate.
      bool repeated = false;
      for (const Assignment& old : excluded) {
        if (boxes_intersect(res.assignment, old, doc.initial_vars)) {
          repeated = true;
          break;
        }
      }
      if (repeated) {
        tree.mark_abandoned(target);
        report.abandoned_branches.push_back(pair);
        return true;
      }
      TestCase cand;
      bool degenerate = false;
      try {
        cand = extract_test_case(res.assignment, p);
      } catch (const DegenerateModelError&) {
        degenerate = true;
      }
      if (!degenerate) {
        CaseRecord rec = run_case(cand, &target, "solver");
        rec.target_atoms = pc.atoms;
        report.cases.push_back(std::move(rec));
        if (report.cases.back().accepted) {
          record_quality(report.cases.back(), target, pc);
          return true;
        }
      }
      if (!add_exclusion(doc, res.assignment) ||
          ++retries > config.max_exclusion_retries) {
        tree.mark_abandoned(target);
        report.abandoned_branches.push_back(pair);
        return true;
      }
      excluded.push_back(res.assignment);
    }
  }

  void finish() {
    report.covered = tree.covered_pairs();
    report.distinct_traces = static_cast<int>(trace_keys.size());
    std::set<std::pair<int, bool>> infeasible;
    for (const auto& pair : tree.unsat_pairs()) {
      if (!report.covered.count(pair)) infeasible.insert(pair);
    }
    if (report.termination == "tree-explored") {
      std::set<int> seen = tree.sites_in_tree();
      for (const BranchSite& site : list_branches(p)) {
        if (seen.count(site.id)) continue;
        report.unreached_sites.push_back(site.id);
        infeasible.insert({site.id, false});
        infeasible.insert({site.id, true});
      }
    }
    report.feasible_pairs =
        2 * report.total_sites - static_cast<int>(infeasible.size());
  }

  Report run() {
    report.cases.push_back(run_case(initial_test_case(p), nullptr, "initial"));
    if (expected_done()) {
      report.termination = "expected-results";
      finish();
      return report;
    }
    for (;;) {
      std::optional<ForkTree::Target> target = tree.select_target();
      if (!target) {
        report.termination = "tree-explored";
        break;
      }
      if (report.iterations >= config.max_iterations) {
        report.termination = "iteration-cap";
        break;
      }
      if (!attempt(*target)) {
        report.termination = "iteration-cap";
        break;
      }
      if (expected_done()) {
        report.termination = "expected-results";
        break;
      }
    }
    finish();
    return report;
  }
};

}  // namespace

Report run_concolic(const Program& p, const DriverConfig& config) {
  Loop loop(p, config);
  return loop.run();
}

}  // namespace qct
