// Acceptance harness. Each criterion prints one [PASS]/[FAIL] line; the
// exit code is the number of failed criteria. Criteria 4-8 drive the real
// solver through the bundled z3 shim, so a node runtime must be available.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qct/benchgen.hpp"
#include "qct/constraint.hpp"
#include "qct/driver.hpp"
#include "qct/error.hpp"
#include "qct/gates.hpp"
#include "qct/ir.hpp"
#include "qct/report.hpp"
#include "qct/rng.hpp"
#include "qct/sim.hpp"
#include "qct/smt.hpp"
#include "qct/symbolic.hpp"

using namespace qct;

namespace {

namespace fs = std::filesystem;

struct Checker {
  std::vector<std::string> failures;
  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

std::string shim_command() {
  return std::string("node ") + QCT_SHIM_JS + " {file}";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Program load_program(const std::string& name) {
  return parse_program(read_file(std::string(QCT_PROGRAMS_DIR) + "/" + name));
}

const GateKind kAllGates[] = {
    GateKind::X,   GateKind::Y,    GateKind::Z,   GateKind::H,
    GateKind::S,   GateKind::Sdg,  GateKind::T,   GateKind::Tdg,
    GateKind::Rx,  GateKind::Ry,   GateKind::Rz,  GateKind::P,
    GateKind::Cx,  GateKind::Cy,   GateKind::Cz,  GateKind::Ch,
    GateKind::Crz, GateKind::Swap, GateKind::Ccx, GateKind::Cswap,
};

GateOp random_op(int n, Rng& rng) {
  for (;;) {
    GateKind kind = kAllGates[rng.uniform_int(0, 19)];
    const int arity = gate_num_qubits(kind);
    if (arity > n) continue;
    GateOp op;
    op.gate = kind;
    while (static_cast<int>(op.qubits.size()) < arity) {
      int q = static_cast<int>(rng.uniform_int(0, n - 1));
      if (std::find(op.qubits.begin(), op.qubits.end(), q) ==
          op.qubits.end()) {
        op.qubits.push_back(q);
      }
    }
    for (int a = 0; a < gate_num_angles(kind); ++a) {
      op.angles.push_back(rng.uniform_real(-3.141592653589793,
                                           3.141592653589793));
    }
    return op;
  }
}

bool has_pair(const std::vector<std::pair<int, bool>>& pairs, int site,
              bool polarity) {
  return std::find(pairs.begin(), pairs.end(),
                   std::pair<int, bool>{site, polarity}) != pairs.end();
}

/// Criteria 4, 6 and 7 share these solver-driven suite runs.
struct SuiteData {
  // 1-qubit small suite, StateEq pinned at site 0 (40 programs).
  std::vector<Program> small1;
  std::vector<Report> small1_concolic;
  std::vector<Report> small1_baseline;
  // 2-qubit small suite (20 programs).
  std::vector<Program> small2;
  std::vector<Report> small2_concolic;
  bool ready = false;
};

DriverConfig suite_config(std::uint64_t seed) {
  DriverConfig config;
  config.solver_command = shim_command();
  config.max_iterations = 50;
  config.repeats = 10;
  config.delta_sat = 0.05;
  config.solver_timeout_seconds = 60.0;
  config.seed = seed;
  return config;
}

// ---- criterion 1: simulator correctness -----------------------------------

void criterion1(Checker& ck) {
  for (GateKind kind : kAllGates) {
    const int arity = gate_num_qubits(kind);
    GateOp op;
    op.gate = kind;
    for (int q = 0; q < arity; ++q) op.qubits.push_back(q);
    for (int a = 0; a < gate_num_angles(kind); ++a) op.angles.push_back(0.3);
    const double defect = max_unitarity_defect(embed_gate(op, arity));
    ck.require(defect < 1e-12, std::string(gate_name(kind)) +
                                   ": unitarity defect " +
                                   format_double(defect));
  }

  Rng rng(2026);
  StateVector state = random_state(4, rng);
  for (int i = 0; i < 10000; ++i) {
    apply_gate_in_place(state, random_op(4, rng));
  }
  const double drift = std::fabs(state.norm() - 1.0);
  ck.require(drift < 1e-10,
             "norm drift " + format_double(drift) + " after 10000 ops");

  StateVector bell = init_state(2);
  apply_gate_in_place(bell, GateOp{GateKind::H, {0}, {}});
  apply_gate_in_place(bell, GateOp{GateKind::Cx, {0, 1}, {}});
  Rng shots(7);
  int c00 = 0;
  int c11 = 0;
  int other = 0;
  for (int i = 0; i < 10000; ++i) {
    auto [outcome, collapsed] = measure_sample(bell, {0, 1}, shots);
    if (outcome.value == 0) {
      ++c00;
    } else if (outcome.value == 3) {
      ++c11;
    } else {
      ++other;
    }
  }
  ck.require(other == 0, "Bell sampling produced a 01/10 outcome");
  for (int count : {c00, c11}) {
    const double freq = count / 10000.0;
    ck.require(0.47 <= freq && freq <= 0.53,
               "Bell outcome frequency " + format_double(freq) +
                   " outside [0.47, 0.53]");
  }
}

// ---- criterion 2: symbolic-concrete equivalence ----------------------------

void criterion2(Checker& ck) {
  Rng rng(12);
  double worst_matrix = 0.0;
  double worst_subst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng.uniform_int(0, 3));
    const int count = static_cast<int>(rng.uniform_int(0, 20));
    std::vector<GateOp> ops;
    for (int i = 0; i < count; ++i) ops.push_back(random_op(n, rng));

    const StateVector initial = random_state(n, rng);
    StateVector expected = initial;
    for (const GateOp& op : ops) apply_gate_in_place(expected, op);

    const UnitaryMatrix u = integrate_operations(ops, n);
    const AmplitudeExprs exprs = amplitude_exprs(ops, n);
    const StateVector substituted = exprs.substitute(initial);
    for (std::size_t r = 0; r < initial.dim(); ++r) {
      Complex acc = 0.0;
      for (std::size_t c = 0; c < initial.dim(); ++c) {
        acc += u.at(r, c) * initial.amps[c];
      }
      worst_matrix =
          std::max(worst_matrix, std::abs(acc - expected.amps[r]));
      worst_subst = std::max(
          worst_subst, std::abs(substituted.amps[r] - expected.amps[r]));
    }
  }
  ck.require(worst_matrix <= 1e-9, "U_all application off by " +
                                       format_double(worst_matrix));
  ck.require(worst_subst <= 1e-9, "AmplitudeExprs substitution off by " +
                                      format_double(worst_subst));
}

// ---- criterion 3: SMT structural fidelity ----------------------------------

SmtDocument teleport_doc(SmtMode mode) {
  Program p = load_program("teleport.qcp");
  SymbolicEnv env = symbolize(p);
  Rng rng(5);
  Trace trace = execute_concrete(p, initial_test_case(p), rng);
  PathConstraint pc = path_condition(trace, p, env);
  return emit_smt(pc, p.num_qubits(), mode);
}

void criterion3(Checker& ck) {
  const SmtDocument perop = teleport_doc(SmtMode::PerOp);
  const SmtDocument integrated = teleport_doc(SmtMode::Integrated);

  const std::string text = perop.serialize();
  const char* sections[] = {"; -- variables --", "; -- normalization --",
                            "; -- operations --", "; -- path condition --",
                            "; -- commands --"};
  std::size_t last = 0;
  for (const char* section : sections) {
    const std::size_t pos = text.find(section);
    ck.require(pos != std::string::npos && pos >= last,
               std::string("section out of order: ") + section);
    if (pos != std::string::npos) last = pos;
  }
  ck.require(text.find("(declare-fun psi_0_0.r () Real)") !=
                 std::string::npos,
             "missing psi_<step>_<idx>.r declarations");
  ck.require(text.find("psi_1_0.i") != std::string::npos,
             "per-op mode lacks step amplitude variables");
  ck.require(text.find("(^ psi_0_0.r 2.0)") != std::string::npos,
             "normalization assert lacks squared terms");
  const std::string tail = "(check-sat)\n(get-model)\n";
  ck.require(text.size() > tail.size() &&
                 text.compare(text.size() - tail.size(), tail.size(), tail) ==
                     0,
             "document does not end with (check-sat)/(get-model)");

  int state_reals = 0;
  for (const std::string& v : integrated.declared_vars()) {
    if (v.rfind("psi_", 0) == 0) ++state_reals;
  }
  ck.require(state_reals == 2 * 4,
             "integrated mode declares " + std::to_string(state_reals) +
                 " state reals, expected 8");

  // Golden files freeze the byte-exact layout.
  const std::string golden_dir = QCT_GOLDEN_DIR;
  ck.require(text == read_file(golden_dir + "/teleport_perop.smt2"),
             "per-op document deviates from the golden file");
  ck.require(integrated.serialize() ==
                 read_file(golden_dir + "/teleport_integrated.smt2"),
             "integrated document deviates from the golden file");
}

// ---- criterion 4: model-substitution soundness -----------------------------

void criterion4(Checker& ck, SuiteData& suites) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    BenchSpec spec;
    spec.qubits = 1;
    spec.scale = BenchScale::Small;
    spec.structure = static_cast<BenchStructure>((seed - 1) % 4);
    spec.seed = seed;
    spec.force_eq_first = true;
    suites.small1.push_back(generate_benchmark(spec));
  }
  for (std::size_t i = 0; i < suites.small1.size(); ++i) {
    suites.small1_concolic.push_back(
        run_concolic(suites.small1[i], suite_config(1000 + i)));
  }
  for (std::uint64_t seed = 101; seed <= 120; ++seed) {
    BenchSpec spec;
    spec.qubits = 2;
    spec.scale = BenchScale::Small;
    spec.structure = static_cast<BenchStructure>((seed - 101) % 4);
    spec.seed = seed;
    suites.small2.push_back(generate_benchmark(spec));
  }
  for (std::size_t i = 0; i < suites.small2.size(); ++i) {
    suites.small2_concolic.push_back(
        run_concolic(suites.small2[i], suite_config(2000 + i)));
  }
  suites.ready = true;

  int solved = 0;
  int violations = 0;
  std::string first_violation;
  auto scan = [&](const Report& r) {
    for (const CaseRecord& rec : r.cases) {
      if (rec.origin != "solver") continue;
      ++solved;
      PathConstraint pc;
      pc.atoms = rec.target_atoms;
      if (!eval_path_constraint(pc, rec.tc.initial_state, rec.tc.classical,
                                0.05 + 0.01)) {
        ++violations;
        if (first_violation.empty()) {
          first_violation = r.program + " target (site " +
                            std::to_string(rec.target_site) + ", " +
                            (rec.target_polarity != 0 ? "true" : "false") +
                            ")";
        }
      }
    }
  };
  for (const Report& r : suites.small1_concolic) scan(r);
  for (const Report& r : suites.small2_concolic) scan(r);
  ck.require(solved >= 100, "only " + std::to_string(solved) +
                                " solved paths, need at least 100");
  ck.require(violations == 0,
             std::to_string(violations) +
                 " extracted cases violate their target atoms, first: " +
                 first_violation);
}

// ---- criterion 5: teleport end-to-end coverage -----------------------------

void criterion5(Checker& ck) {
  Program p = load_program("teleport.qcp");
  DriverConfig config = suite_config(5);
  config.max_iterations = 20;
  Report r = run_concolic(p, config);

  ck.require(r.iterations <= 20, "iteration budget exceeded");
  ck.require(r.solver_timeouts == 0, "a solver call hit the 60s timeout");
  const double coverage = feasible_branch_coverage(r);
  ck.require(coverage >= 1.0 - 1e-12,
             "feasible coverage " + format_double(coverage) +
                 " after 20 iterations");

  bool alice_nonzero = false;
  for (const CaseRecord& rec : r.cases) {
    auto it = rec.tc.classical.find("alice");
    if (it != rec.tc.classical.end() &&
        std::get<std::int64_t>(it->second) != 0) {
      alice_nonzero = true;
    }
  }
  ck.require(alice_nonzero, "no test case with alice != 0 was generated");

  // A solver case whose first conditional measures deterministically: the
  // zeroing constraints leave all weight on the observed outcome.
  bool deterministic = false;
  for (const CaseRecord& rec : r.cases) {
    if (rec.origin != "solver") continue;
    for (const Trace& trace : rec.traces) {
      if (trace.steps.empty() || !trace.steps[0].outcome) continue;
      const TraceStep& step = trace.steps[0];
      const IfStmt* branch = find_branch(p, step.site);
      const auto* m =
          branch == nullptr ? nullptr : std::get_if<MeasureCond>(&branch->cond);
      if (m == nullptr) continue;
      StateVector state = rec.tc.initial_state;
      for (int k = 0; k < step.ops_prefix; ++k) {
        apply_gate_in_place(state, trace.ops[k]);
      }
      const std::vector<double> marginal = probabilities(state, m->qubits);
      if (marginal[step.outcome->value] > 0.99) deterministic = true;
    }
  }
  ck.require(deterministic,
             "no generated case fixes a measurement outcome deterministically");
}

// ---- criterion 6: desk-scale coverage trend --------------------------------

void criterion6(Checker& ck, SuiteData& suites) {
  if (!suites.ready) {
    ck.require(false, "suite runs unavailable (criterion 4 aborted)");
    return;
  }
  double coverage_sum = 0.0;
  int wins = 0;
  for (std::size_t i = 0; i < suites.small1.size(); ++i) {
    coverage_sum += feasible_branch_coverage(suites.small1_concolic[i]);
    suites.small1_baseline.push_back(
        run_baseline(suites.small1[i], BaselineKind::Vector, 1000, 10,
                     10000 + i));
    if (suites.small1_concolic[i].covered.size() >=
        suites.small1_baseline[i].covered.size()) {
      ++wins;
    }
  }
  const double mean = coverage_sum / static_cast<double>(suites.small1.size());
  ck.require(mean >= 0.95, "mean feasible coverage " + format_double(mean) +
                               " below 0.95");
  ck.require(wins * 5 >= static_cast<int>(suites.small1.size()) * 4,
             "concolic beats or ties the vector baseline on only " +
                 std::to_string(wins) + "/40 programs");
}

// ---- criterion 7: quality trend ---------------------------------------------

void criterion7(Checker& ck, const SuiteData& suites) {
  if (!suites.ready || suites.small1_baseline.empty()) {
    ck.require(false, "suite runs unavailable (criterion 4 or 6 aborted)");
    return;
  }
  double concolic_sum = 0.0;
  int concolic_count = 0;
  double worst = 0.0;
  for (const Report& r : suites.small1_concolic) {
    for (const QualityEntry& entry : r.quality_entries) {
      concolic_sum += entry.value;
      ++concolic_count;
      worst = std::max(worst, entry.value);
    }
  }
  ck.require(concolic_count > 0, "no accepted StateEq-targeted cases");
  if (concolic_count == 0) return;
  const double concolic_mean = concolic_sum / concolic_count;
  ck.require(concolic_mean <= 0.2, "mean quality " +
                                       format_double(concolic_mean) +
                                       " above 0.2");
  // 2^n (delta + delta_sat) with n = 1, delta = 0.01, delta_sat = 0.05.
  ck.require(worst <= 0.12 + 1e-9,
             "per-branch quality " + format_double(worst) + " above 0.12");

  double baseline_sum = 0.0;
  int baseline_count = 0;
  for (const Report& r : suites.small1_baseline) {
    for (const QualityEntry& entry : r.quality_entries) {
      baseline_sum += entry.value;
      ++baseline_count;
    }
  }
  ck.require(baseline_count > 0, "baseline produced no quality samples");
  if (baseline_count > 0) {
    const double baseline_mean = baseline_sum / baseline_count;
    ck.require(concolic_mean < baseline_mean,
               "concolic quality " + format_double(concolic_mean) +
                   " not below baseline " + format_double(baseline_mean));
  }
}

// ---- criterion 8: unsat-branch detection ------------------------------------

void criterion8(Checker& ck) {
  Program p = load_program("mi_bug.qcp");
  DriverConfig config = suite_config(3);
  config.max_iterations = 20;
  Report r = run_concolic(p, config);
  ck.require(has_pair(r.unsat_branches, 1, true),
             "inner StateEq true branch was not reported unsat");

  for (BaselineKind kind : {BaselineKind::Vector, BaselineKind::Circuit}) {
    Report base = run_baseline(p, kind, 1000, 10,
                               kind == BaselineKind::Vector ? 21 : 22);
    ck.require(base.unsat_branches.empty(),
               "baseline reported an unsat branch");
    ck.require(base.covered.count({1, true}) == 0,
               "baseline claims coverage of the infeasible branch");
    ck.require(base.covered.count({1, false}) == 1,
               "baseline never reached the inner conditional");
  }
}

// ---- criterion 9: exclusion refinement --------------------------------------

void criterion9(Checker& ck) {
  const fs::path dir = fs::temp_directory_path() / "qct_acceptance_mock";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path script = dir / "fixed_box.sh";
  std::ofstream(script) << "echo sat\n"
                           "echo '((define-fun psi_0_0.r () Real 0.6)"
                           " (define-fun psi_0_1.r () Real 0.8))'\n";

  Program p = parse_program(R"(
program gt(q: qreg(1)) {
  if check_state_gt(q, [("1", 0.9)], 0.01) {
    return 1;
  }
  return 0;
}
)");
  DriverConfig config;
  config.solver_command = "sh " + script.string() + " {file}";
  config.max_iterations = 10;
  config.repeats = 3;
  config.seed = 1;
  config.keep_smt_dir = (dir / "scripts").string();
  Report r = run_concolic(p, config);

  ck.require(r.solver_calls == 2, "expected exactly 2 solver calls, got " +
                                      std::to_string(r.solver_calls));
  ck.require(has_pair(r.abandoned_branches, 0, true),
             "repeated box was not rejected by the monotonicity check");
  const std::string first =
      read_file((dir / "scripts" / "target_0t_1.smt2").string());
  const std::string second =
      read_file((dir / "scripts" / "target_0t_2.smt2").string());
  ck.require(first.find("; exclusions") == std::string::npos,
             "first document already contains an exclusion");
  ck.require(second.find("(assert (or (< psi_0_0.r ") != std::string::npos,
             "second document lacks the exclusion assertion");
}

}  // namespace

int main() {
  SuiteData suites;
  int failures = 0;

  const auto run = [&failures](int id, const char* label, double limit_seconds,
                               auto&& body) {
    Checker ck;
    const auto start = std::chrono::steady_clock::now();
    try {
      body(ck);
    } catch (const std::exception& e) {
      ck.require(false, std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (limit_seconds > 0.0 && seconds > limit_seconds) {
      ck.failures.push_back("runtime " + format_double(seconds) +
                            "s exceeds " + format_double(limit_seconds) + "s");
    }
    if (ck.failures.empty()) {
      std::printf("[PASS] %d. %s (%.1fs)\n", id, label, seconds);
    } else {
      ++failures;
      std::printf("[FAIL] %d. %s (%.1fs): %s\n", id, label, seconds,
                  ck.failures.front().c_str());
    }
    std::fflush(stdout);
  };

  run(1, "simulator correctness", 60.0,
      [](Checker& ck) { criterion1(ck); });
  run(2, "symbolic-concrete equivalence", 120.0,
      [](Checker& ck) { criterion2(ck); });
  run(3, "SMT structural fidelity", 0.0,
      [](Checker& ck) { criterion3(ck); });
  run(4, "model-substitution soundness", 1800.0,
      [&suites](Checker& ck) { criterion4(ck, suites); });
  run(5, "teleport end-to-end coverage", 0.0,
      [](Checker& ck) { criterion5(ck); });
  run(6, "desk-scale coverage trend", 0.0,
      [&suites](Checker& ck) { criterion6(ck, suites); });
  run(7, "quality trend", 0.0,
      [&suites](Checker& ck) { criterion7(ck, suites); });
  run(8, "unsat-branch detection", 0.0,
      [](Checker& ck) { criterion8(ck); });
  run(9, "exclusion refinement", 0.0,
      [](Checker& ck) { criterion9(ck); });

  std::printf("%d/9 criteria passed\n", 9 - failures);
  return failures;
}
