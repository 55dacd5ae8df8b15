// Microbenchmarks for the hot paths: statevector updates, unitary
// integration, symbolic substitution, SMT emission, and program parsing.

#include <benchmark/benchmark.h>

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qct/benchgen.hpp"
#include "qct/constraint.hpp"
#include "qct/ir.hpp"
#include "qct/rng.hpp"
#include "qct/sim.hpp"
#include "qct/smt.hpp"
#include "qct/symbolic.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string teleport_source() {
  static const std::string text =
      read_file(std::string(QCT_PROGRAMS_DIR) + "/teleport.qcp");
  return text;
}

qct::GateOp random_op(int n, qct::Rng& rng) {
  static const qct::GateKind kinds[] = {
      qct::GateKind::H,  qct::GateKind::X,  qct::GateKind::S,
      qct::GateKind::Rx, qct::GateKind::Rz, qct::GateKind::Cx,
  };
  qct::GateOp op;
  op.gate = kinds[rng.uniform_int(0, 5)];
  op.qubits.push_back(rng.uniform_int(0, n - 1));
  if (qct::gate_num_qubits(op.gate) == 2) {
    int other = rng.uniform_int(0, n - 2);
    if (other >= op.qubits[0]) ++other;
    op.qubits.push_back(other);
  }
  for (int a = 0; a < qct::gate_num_angles(op.gate); ++a) {
    op.angles.push_back(rng.uniform01() * 3.14159);
  }
  return op;
}

std::vector<qct::GateOp> random_ops(int n, int count, std::uint64_t seed) {
  qct::Rng rng(seed);
  std::vector<qct::GateOp> ops;
  ops.reserve(count);
  for (int i = 0; i < count; ++i) ops.push_back(random_op(n, rng));
  return ops;
}

void BM_ApplyGate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  qct::Rng rng(1);
  qct::StateVector sv = qct::random_state(n, rng);
  qct::GateOp h;
  h.gate = qct::GateKind::H;
  h.qubits = {0};
  for (auto _ : state) {
    qct::apply_gate_in_place(sv, h);
    benchmark::DoNotOptimize(sv.amps.data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ApplyGate)->Arg(2)->Arg(6)->Arg(10)->Arg(12);

void BM_ApplyCx(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  qct::Rng rng(2);
  qct::StateVector sv = qct::random_state(n, rng);
  qct::GateOp cx;
  cx.gate = qct::GateKind::Cx;
  cx.qubits = {0, n - 1};
  for (auto _ : state) {
    qct::apply_gate_in_place(sv, cx);
    benchmark::DoNotOptimize(sv.amps.data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ApplyCx)->Arg(2)->Arg(6)->Arg(10)->Arg(12);

void BM_IntegrateOperations(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<qct::GateOp> ops = random_ops(n, 20, 7);
  for (auto _ : state) {
    qct::UnitaryMatrix u = qct::integrate_operations(ops, n);
    benchmark::DoNotOptimize(u.entries.data());
  }
}
BENCHMARK(BM_IntegrateOperations)->Arg(1)->Arg(2)->Arg(4)->Arg(6);

void BM_AmplitudeSubstitution(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  qct::AmplitudeExprs exprs = qct::amplitude_exprs(random_ops(n, 20, 7), n);
  qct::Rng rng(3);
  qct::StateVector initial = qct::random_state(n, rng);
  for (auto _ : state) {
    qct::StateVector out = exprs.substitute(initial);
    benchmark::DoNotOptimize(out.amps.data());
  }
}
BENCHMARK(BM_AmplitudeSubstitution)->Arg(1)->Arg(2)->Arg(4)->Arg(6);

void BM_MeasureSample(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  qct::Rng rng(4);
  qct::StateVector sv = qct::random_state(n, rng);
  std::vector<int> qubits;
  for (int q = 0; q < n; ++q) qubits.push_back(q);
  for (auto _ : state) {
    auto [outcome, post] = qct::measure_sample(sv, qubits, rng);
    benchmark::DoNotOptimize(post.amps.data());
    benchmark::DoNotOptimize(outcome);
  }
}
BENCHMARK(BM_MeasureSample)->Arg(2)->Arg(6)->Arg(10);

void BM_RandomState(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  qct::Rng rng(5);
  for (auto _ : state) {
    qct::StateVector sv = qct::random_state(n, rng);
    benchmark::DoNotOptimize(sv.amps.data());
  }
}
BENCHMARK(BM_RandomState)->Arg(2)->Arg(6)->Arg(10);

void BM_ParseProgram(benchmark::State& state) {
  const std::string text = teleport_source();
  for (auto _ : state) {
    qct::Program p = qct::parse_program(text);
    benchmark::DoNotOptimize(&p);
  }
}
BENCHMARK(BM_ParseProgram);

void BM_ExecuteConcrete(benchmark::State& state) {
  qct::Program p = qct::parse_program(teleport_source());
  qct::TestCase tc = qct::initial_test_case(p);
  qct::Rng rng(6);
  for (auto _ : state) {
    qct::Trace trace = qct::execute_concrete(p, tc, rng);
    benchmark::DoNotOptimize(&trace);
  }
}
BENCHMARK(BM_ExecuteConcrete);

void BM_EmitSmt(benchmark::State& state) {
  const bool perop = state.range(0) != 0;
  qct::Program p = qct::parse_program(teleport_source());
  qct::SymbolicEnv env = qct::symbolize(p);
  qct::Rng rng(7);
  qct::Trace trace = qct::execute_concrete(p, qct::initial_test_case(p), rng);
  qct::PathConstraint pc = qct::path_condition(trace, p, env);
  const qct::SmtMode mode =
      perop ? qct::SmtMode::PerOp : qct::SmtMode::Integrated;
  for (auto _ : state) {
    qct::SmtDocument doc = qct::emit_smt(pc, p.num_qubits(), mode, true);
    std::string text = doc.serialize();
    benchmark::DoNotOptimize(text.data());
  }
}
BENCHMARK(BM_EmitSmt)->Arg(0)->Arg(1);

void BM_GenerateBenchmark(benchmark::State& state) {
  qct::BenchSpec spec;
  spec.qubits = 2;
  spec.delta = 0.01;
  spec.structure = qct::BenchStructure::Nested;
  spec.scale = qct::BenchScale::Medium;
  std::uint64_t seed = 1;
  for (auto _ : state) {
    spec.seed = seed++;
    qct::Program p = qct::generate_benchmark(spec);
    benchmark::DoNotOptimize(&p);
  }
}
BENCHMARK(BM_GenerateBenchmark);

}  // namespace

BENCHMARK_MAIN();
