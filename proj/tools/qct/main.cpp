/**
 * Copyright 2026, the qct developers.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "qct/benchgen.hpp"
#include "qct/constraint.hpp"
#include "qct/driver.hpp"
#include "qct/error.hpp"
#include "qct/ir.hpp"
#include "qct/report.hpp"
#include "qct/smt.hpp"
#include "qct/symbolic.hpp"

#ifndef QCT_DEFAULT_SHIM
#define QCT_DEFAULT_SHIM ""
#endif

namespace {

// Exit codes: 0 all feasible branches covered, 1 error, 2 partial coverage,
// 3 unsatisfiable branch found (dominates 2), 64 usage.
constexpr int kExitFull = 0;
constexpr int kExitError = 1;
constexpr int kExitPartial = 2;
constexpr int kExitUnsat = 3;
constexpr int kExitUsage = 64;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw qct::Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw qct::Error("cannot write " + path);
  out << content;
}

qct::Program load_program(const std::string& path) {
  return qct::parse_program(read_file(path));
}

std::string default_solver_command() {
  return qct::resolve_solver_command(QCT_DEFAULT_SHIM);
}

int report_exit_code(const qct::Report& r) {
  if (!r.unsat_branches.empty()) return kExitUnsat;
  if (qct::feasible_branch_coverage(r) < 1.0) return kExitPartial;
  return kExitFull;
}

qct::SmtMode mode_from_name(const std::string& name) {
  if (name == "integrated") return qct::SmtMode::Integrated;
  if (name == "perop") return qct::SmtMode::PerOp;
  throw qct::Error("unknown SMT mode: " + name);
}

struct TestOptions {
  std::string program_path;
  std::uint64_t seed = 0;
  int max_iterations = 50;
  int repeats = 10;
  double delta_sat = 0.05;
  double timeout = 60.0;
  std::string smt_mode = "integrated";
  std::string solver;
  std::string keep_smt;
  std::string report_path;
  std::string cases_dir;
  std::vector<std::int64_t> expected;
  bool expected_set = false;
  bool no_timings = false;
};

qct::DriverConfig driver_config(const TestOptions& opt) {
  qct::DriverConfig config;
  config.seed = opt.seed;
  config.max_iterations = opt.max_iterations;
  config.repeats = opt.repeats;
  config.delta_sat = opt.delta_sat;
  config.solver_timeout_seconds = opt.timeout;
  config.smt_mode = mode_from_name(opt.smt_mode);
  config.solver_command = opt.solver.empty() ? default_solver_command()
                                             : opt.solver;
  config.keep_smt_dir = opt.keep_smt;
  if (opt.expected_set) {
    config.expected_results.emplace(opt.expected.begin(), opt.expected.end());
  }
  return config;
}

int cmd_test(const TestOptions& opt) {
  qct::Program p = load_program(opt.program_path);
  qct::Report report = qct::run_concolic(p, driver_config(opt));

  std::string report_path = opt.report_path;
  std::string cases_dir = opt.cases_dir;
  if (const char* dir = std::getenv("QCT_REPORT_DIR");
      dir != nullptr && *dir != '\0') {
    if (report_path.empty()) {
      report_path =
          (std::filesystem::path(dir) / (p.name + ".report.yaml")).string();
    }
    if (cases_dir.empty()) cases_dir = dir;
  }

  std::string text = qct::report_to_string(report, !opt.no_timings);
  if (report_path.empty()) {
    std::cout << text;
  } else {
    std::filesystem::create_directories(
        std::filesystem::path(report_path).parent_path());
    write_file(report_path, text);
  }
  if (!cases_dir.empty()) {
    std::filesystem::create_directories(cases_dir);
    for (std::size_t i = 0; i < report.cases.size(); ++i) {
      const qct::CaseRecord& rec = report.cases[i];
      if (!rec.accepted) continue;
      std::filesystem::path file =
          std::filesystem::path(cases_dir) /
          (p.name + ".case" + std::to_string(i) + ".yaml");
      write_file(file.string(),
                 qct::test_case_to_string(rec.tc, p.num_qubits()));
    }
  }
  return report_exit_code(report);
}

struct BenchOptions {
  std::string out_dir;
  int qubits = 2;
  double delta = 0.01;
  int count = 12;
  std::uint64_t seed_base = 1;
};

int cmd_bench(const BenchOptions& opt) {
  static const qct::BenchStructure kStructures[] = {
      qct::BenchStructure::Simple, qct::BenchStructure::Nested,
      qct::BenchStructure::Multiway, qct::BenchStructure::Multiparam};
  static const qct::BenchScale kScales[] = {qct::BenchScale::Small,
                                            qct::BenchScale::Medium,
                                            qct::BenchScale::Large};
  std::filesystem::create_directories(opt.out_dir);
  qct::Manifest manifest;
  manifest.qubits = opt.qubits;
  manifest.delta = opt.delta;
  for (int i = 0; i < opt.count; ++i) {
    qct::BenchSpec spec;
    spec.qubits = opt.qubits;
    spec.delta = opt.delta;
    spec.structure = kStructures[i % 4];
    spec.scale = kScales[(i / 4) % 3];
    spec.seed = opt.seed_base + static_cast<std::uint64_t>(i);
    qct::Program p = qct::generate_benchmark(spec);
    std::string file = p.name + ".qcp";
    write_file((std::filesystem::path(opt.out_dir) / file).string(),
               qct::unparse(p));
    manifest.entries.push_back({file, qct::structure_name(spec.structure),
                                qct::scale_name(spec.scale), spec.seed});
  }
  std::ostringstream buf;
  qct::write_manifest(manifest, buf);
  write_file((std::filesystem::path(opt.out_dir) / "manifest.yaml").string(),
             buf.str());
  std::cout << "wrote " << opt.count << " programs to " << opt.out_dir
            << "\n";
  return kExitFull;
}

struct CompareOptions {
  std::string manifest_path;
  int budget = 1000;
  int repeats = 10;
  int jobs = 1;
  std::uint64_t seed_base = 0;
  int max_iterations = 50;
  double timeout = 60.0;
  std::string out_path;
};

struct CompareRow {
  std::string program;
  int sites = 0;
  double concolic_cov = 0.0;
  double concolic_feasible = 0.0;
  double vector_cov = 0.0;
  double circuit_cov = 0.0;
  std::optional<double> concolic_q;
  std::optional<double> vector_q;
  std::optional<double> circuit_q;
  int solver_calls = 0;
  int unsat = 0;
  std::string termination;
  std::string error;
};

std::optional<double> quality_mean(const qct::Report& r) {
  if (r.quality_entries.empty()) return std::nullopt;
  double total = 0.0;
  for (const qct::QualityEntry& e : r.quality_entries) total += e.value;
  return total / static_cast<double>(r.quality_entries.size());
}

std::string opt_cell(const std::optional<double>& v) {
  return v ? qct::format_double(*v) : "-";
}

int cmd_compare(const CompareOptions& opt) {
  qct::Manifest manifest = qct::parse_manifest(read_file(opt.manifest_path));
  std::filesystem::path base =
      std::filesystem::path(opt.manifest_path).parent_path();
  std::string solver = default_solver_command();

  std::vector<CompareRow> rows(manifest.entries.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= manifest.entries.size()) break;
      CompareRow& row = rows[i];
      try {
        qct::Program p =
            load_program((base / manifest.entries[i].file).string());
        std::uint64_t seed = opt.seed_base + i;
        qct::DriverConfig config;
        config.seed = seed;
        config.max_iterations = opt.max_iterations;
        config.repeats = opt.repeats;
        config.solver_timeout_seconds = opt.timeout;
        config.solver_command = solver;
        qct::Report concolic = qct::run_concolic(p, config);
        qct::Report vec = qct::run_baseline(p, qct::BaselineKind::Vector,
                                            opt.budget, opt.repeats,
                                            seed + 10000);
        qct::Report circ = qct::run_baseline(p, qct::BaselineKind::Circuit,
                                             opt.budget, opt.repeats,
                                             seed + 20000);
        row.program = p.name;
        row.sites = concolic.total_sites;
        row.concolic_cov = qct::branch_coverage(concolic);
        row.concolic_feasible = qct::feasible_branch_coverage(concolic);
        row.vector_cov = qct::branch_coverage(vec);
        row.circuit_cov = qct::branch_coverage(circ);
        row.concolic_q = quality_mean(concolic);
        row.vector_q = quality_mean(vec);
        row.circuit_q = quality_mean(circ);
        row.solver_calls = concolic.solver_calls;
        row.unsat = static_cast<int>(concolic.unsat_branches.size());
        row.termination = concolic.termination;
      } catch (const std::exception& e) {
        row.program = manifest.entries[i].file;
        row.error = e.what();
      }
    }
  };
  int jobs = std::max(1, opt.jobs);
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  for (const CompareRow& row : rows) {
    if (!row.error.empty()) {
      std::cerr << "error: " << row.program << ": " << row.error << "\n";
      return kExitError;
    }
  }

  std::ostringstream out;
  out << "program\tsites\tconcolic_cov\tconcolic_feasible\tvector_cov\t"
         "circuit_cov\tconcolic_quality\tvector_quality\tcircuit_quality\t"
         "solver_calls\tunsat\ttermination\n";
  double cov_sum = 0.0, feas_sum = 0.0, vec_sum = 0.0, circ_sum = 0.0;
  double cq_sum = 0.0, vq_sum = 0.0, xq_sum = 0.0;
  int cq_n = 0, vq_n = 0, xq_n = 0;
  for (const CompareRow& row : rows) {
    out << row.program << "\t" << row.sites << "\t"
        << qct::format_double(row.concolic_cov) << "\t"
        << qct::format_double(row.concolic_feasible) << "\t"
        << qct::format_double(row.vector_cov) << "\t"
        << qct::format_double(row.circuit_cov) << "\t"
        << opt_cell(row.concolic_q) << "\t" << opt_cell(row.vector_q) << "\t"
        << opt_cell(row.circuit_q) << "\t" << row.solver_calls << "\t"
        << row.unsat << "\t" << row.termination << "\n";
    cov_sum += row.concolic_cov;
    feas_sum += row.concolic_feasible;
    vec_sum += row.vector_cov;
    circ_sum += row.circuit_cov;
    if (row.concolic_q) { cq_sum += *row.concolic_q; ++cq_n; }
    if (row.vector_q) { vq_sum += *row.vector_q; ++vq_n; }
    if (row.circuit_q) { xq_sum += *row.circuit_q; ++xq_n; }
  }
  if (!rows.empty()) {
    double n = static_cast<double>(rows.size());
    out << "# mean concolic_cov=" << qct::format_double(cov_sum / n)
        << " concolic_feasible=" << qct::format_double(feas_sum / n)
        << " vector_cov=" << qct::format_double(vec_sum / n)
        << " circuit_cov=" << qct::format_double(circ_sum / n) << "\n";
    out << "# mean concolic_quality="
        << (cq_n ? qct::format_double(cq_sum / cq_n) : "-")
        << " vector_quality="
        << (vq_n ? qct::format_double(vq_sum / vq_n) : "-")
        << " circuit_quality="
        << (xq_n ? qct::format_double(xq_sum / xq_n) : "-") << "\n";
  }
  if (opt.out_path.empty()) {
    std::cout << out.str();
  } else {
    write_file(opt.out_path, out.str());
  }
  return kExitFull;
}

struct ShowSmtOptions {
  std::string program_path;
  std::uint64_t seed = 0;
  std::string smt_mode = "integrated";
  bool flip_last = false;
  bool no_set_logic = false;
};

int cmd_show_smt(const ShowSmtOptions& opt) {
  qct::Program p = load_program(opt.program_path);
  qct::SymbolicEnv env = qct::symbolize(p);
  qct::Rng rng(opt.seed);
  qct::Trace trace = qct::execute_concrete(p, qct::initial_test_case(p), rng);
  qct::PathConstraint pc = qct::path_condition(trace, p, env);
  if (opt.flip_last) {
    if (pc.atoms.empty()) throw qct::Error("no conditionals on this path");
    pc.atoms.back() = qct::negate(pc.atoms.back());
  }
  qct::SmtDocument doc = qct::emit_smt(pc, p.num_qubits(),
                                       mode_from_name(opt.smt_mode),
                                       !opt.no_set_logic);
  std::cout << doc.serialize();
  return kExitFull;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Concolic tester for hybrid quantum-classical programs"};
  app.require_subcommand(1);

  TestOptions test_opt;
  CLI::App* test = app.add_subcommand(
      "test", "Concolically explore one program and report coverage");
  test->add_option("program", test_opt.program_path, "Program file (.qcp)")
      ->required();
  test->add_option("--seed", test_opt.seed, "Search seed");
  test->add_option("--max-iterations,--max-iters", test_opt.max_iterations,
                   "Solver-call budget (i_max)");
  test->add_option("--repeats", test_opt.repeats,
                   "Executions per accepted input (r)");
  test->add_option("--delta-sat", test_opt.delta_sat,
                   "Model acceptance slack (delta-sat)");
  test->add_option("--timeout", test_opt.timeout,
                   "Per-solve timeout in seconds");
  test->add_option("--smt-mode", test_opt.smt_mode,
                   "SMT layout: integrated or perop");
  test->add_option("--solver", test_opt.solver,
                   "Solver command template ({file}, {delta} expanded)");
  test->add_option("--keep-smt", test_opt.keep_smt,
                   "Directory to keep every emitted SMT script");
  test->add_option("--report", test_opt.report_path,
                   "Write the report here instead of stdout");
  test->add_option("--cases-dir", test_opt.cases_dir,
                   "Write accepted test cases into this directory");
  test->add_option("--expected-results", test_opt.expected,
                   "Stop once all these return values were observed")
      ->delimiter(',');
  test->add_flag("--no-timings", test_opt.no_timings,
                 "Omit wall-clock fields from the report");

  BenchOptions bench_opt;
  CLI::App* bench = app.add_subcommand(
      "bench", "Generate a deterministic benchmark suite plus manifest");
  bench->add_option("--out", bench_opt.out_dir, "Output directory")
      ->required();
  bench->add_option("--qubits", bench_opt.qubits, "Register size")
      ->check(CLI::Range(1, qct::kMaxQubits));
  bench->add_option("--delta", bench_opt.delta,
                    "Tolerance for generated state conditions");
  bench->add_option("--count", bench_opt.count, "Number of programs");
  bench->add_option("--seed-base", bench_opt.seed_base,
                    "Seed of program i is seed-base + i");

  CompareOptions cmp_opt;
  CLI::App* cmp = app.add_subcommand(
      "compare",
      "Run concolic search and random baselines over a benchmark suite");
  cmp->add_option("--manifest", cmp_opt.manifest_path, "Suite manifest")
      ->required();
  cmp->add_option("--budget", cmp_opt.budget,
                  "Random inputs per baseline run");
  cmp->add_option("--repeats", cmp_opt.repeats,
                  "Executions per input, all strategies");
  cmp->add_option("--jobs", cmp_opt.jobs, "Worker threads");
  cmp->add_option("--seed-base", cmp_opt.seed_base,
                  "Seed of program i is seed-base + i");
  cmp->add_option("--max-iterations,--max-iters", cmp_opt.max_iterations,
                  "Concolic solver-call budget per program");
  cmp->add_option("--timeout", cmp_opt.timeout,
                  "Per-solve timeout in seconds");
  cmp->add_option("--out", cmp_opt.out_path,
                  "Write the table here instead of stdout");

  ShowSmtOptions show_opt;
  CLI::App* show = app.add_subcommand(
      "show-smt", "Emit the SMT script for the initial input's path");
  show->add_option("program", show_opt.program_path, "Program file (.qcp)")
      ->required();
  show->add_option("--seed", show_opt.seed,
                   "Seed for the concrete run that picks the path");
  show->add_option("--smt-mode", show_opt.smt_mode,
                   "SMT layout: integrated or perop");
  show->add_flag("--flip-last", show_opt.flip_last,
                 "Negate the final branch, as the search would");
  show->add_flag("--no-set-logic", show_opt.no_set_logic,
                 "Drop the (set-logic ...) line");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (test->parsed()) {
      test_opt.expected_set = test->count("--expected-results") > 0;
      return cmd_test(test_opt);
    }
    if (bench->parsed()) return cmd_bench(bench_opt);
    if (cmp->parsed()) return cmd_compare(cmp_opt);
    if (show->parsed()) return cmd_show_smt(show_opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitUsage;
}
