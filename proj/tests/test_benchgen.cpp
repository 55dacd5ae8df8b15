#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "qct/benchgen.hpp"
#include "qct/error.hpp"
#include "qct/ir.hpp"
#include "qct/report.hpp"
#include "qct/rng.hpp"
#include "qct/sim.hpp"

using namespace qct;

namespace {

BenchSpec spec_for(BenchStructure structure, std::uint64_t seed,
                   BenchScale scale = BenchScale::Small) {
  BenchSpec spec;
  spec.structure = structure;
  spec.scale = scale;
  spec.seed = seed;
  return spec;
}

int count_gate_ops(const Block& block);

int count_gate_ops(const Stmt& s) {
  if (std::holds_alternative<GateOp>(s.node)) return 1;
  if (const auto* branch = std::get_if<IfStmt>(&s.node)) {
    // Both arms carry the same op count by construction; follow one.
    return count_gate_ops(branch->then_block);
  }
  return 0;
}

int count_gate_ops(const Block& block) {
  int count = 0;
  for (const Stmt& s : block) count += count_gate_ops(s);
  return count;
}

}  // namespace

TEST_CASE("names round-trip") {
  for (BenchScale s : {BenchScale::Small, BenchScale::Medium,
                       BenchScale::Large}) {
    CHECK(scale_from_name(scale_name(s)) == s);
  }
  for (BenchStructure s :
       {BenchStructure::Simple, BenchStructure::Nested,
        BenchStructure::Multiway, BenchStructure::Multiparam}) {
    CHECK(structure_from_name(structure_name(s)) == s);
  }
  CHECK_THROWS_AS(scale_from_name("giant"), ValidationError);
  CHECK_THROWS_AS(structure_from_name("spaghetti"), ValidationError);
  CHECK(scale_ops(BenchScale::Small) == 5);
  CHECK(scale_ops(BenchScale::Medium) == 10);
  CHECK(scale_ops(BenchScale::Large) == 20);
}

TEST_CASE("generation is deterministic and parseable") {
  const BenchSpec spec = spec_for(BenchStructure::Nested, 42);
  const std::string a = generate_benchmark_text(spec);
  const std::string b = generate_benchmark_text(spec);
  CHECK(a == b);
  const std::string c = generate_benchmark_text(spec_for(
      BenchStructure::Nested, 43));
  CHECK(a != c);

  Program p = parse_program(a);
  ValidationReport issues = validate_program(p);
  CHECK(issues.issues.empty());
}

TEST_CASE("structures fix the branch site count") {
  const std::map<BenchStructure, int> expected{
      {BenchStructure::Simple, 1},
      {BenchStructure::Nested, 2},
      {BenchStructure::Multiway, 3},
      {BenchStructure::Multiparam, 2},
  };
  for (const auto& [structure, sites] : expected) {
    for (std::uint64_t seed : {1ULL, 9ULL, 77ULL}) {
      Program p = generate_benchmark(spec_for(structure, seed));
      CHECK(static_cast<int>(list_branches(p).size()) == sites);
    }
  }
}

TEST_CASE("every path carries the scale's op count") {
  for (BenchScale scale : {BenchScale::Small, BenchScale::Medium,
                           BenchScale::Large}) {
    Program p = generate_benchmark(
        spec_for(BenchStructure::Nested, 12, scale));
    CHECK(count_gate_ops(p.body) == scale_ops(scale));
  }
}

TEST_CASE("a seed sweep exercises every condition kind") {
  std::set<std::size_t> kinds;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto structure = static_cast<BenchStructure>(seed % 4);
    Program p = generate_benchmark(spec_for(structure, seed));
    for (const BranchSite& site : list_branches(p)) {
      kinds.insert(find_branch(p, site.id)->cond.index());
    }
  }
  // MeasureCond, ClassicalCond, StateEqCond, StateGtCond, StateLtCond.
  CHECK(kinds.size() == 5);
}

TEST_CASE("force_eq_first pins a StateEq condition at site 0") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    BenchStructure structure = static_cast<BenchStructure>(seed % 4);
    BenchSpec spec = spec_for(structure, seed);
    spec.force_eq_first = true;
    Program p = generate_benchmark(spec);
    const IfStmt* first = find_branch(p, 0);
    REQUIRE(first != nullptr);
    if (structure == BenchStructure::Multiparam) {
      // Multiparam conditionals are classical, so there is nothing to pin.
      CHECK(std::get_if<StateEqCond>(&first->cond) == nullptr);
      CHECK(!p.reference_dist.has_value());
      continue;
    }
    const auto* eq = std::get_if<StateEqCond>(&first->cond);
    REQUIRE(eq != nullptr);
    CHECK(eq->delta == 0.01);
    // The target distribution is exported through reference_dist.
    CHECK(p.reference_dist == eq->dist);
    double sum = 0.0;
    for (double d : eq->dist) sum += d;
    CHECK(sum == doctest::Approx(1.0));
  }
}

TEST_CASE("random states are normalized and deterministic") {
  Rng rng(5);
  StateVector sv = random_state(2, rng);
  CHECK(sv.dim() == 4);
  CHECK(sv.norm() == doctest::Approx(1.0).epsilon(1e-12));
  Rng again(5);
  StateVector sw = random_state(2, again);
  for (std::size_t x = 0; x < sv.dim(); ++x) {
    CHECK(sv.amps[x] == sw.amps[x]);
  }

  Rng circ(9);
  StateVector sc = random_circuit_input(2, circ);
  CHECK(sc.norm() == doctest::Approx(1.0).epsilon(1e-12));
  // A depth-3 layered circuit moves amplitude off |00>.
  CHECK(std::abs(sc.amps[0]) < 0.999);
}

TEST_CASE("baselines sample the budget and report in driver shape") {
  BenchSpec spec = spec_for(BenchStructure::Simple, 21);
  spec.force_eq_first = true;
  Program p = generate_benchmark(spec);
  Report r = run_baseline(p, BaselineKind::Vector, 25, 4, 99);
  CHECK(r.program == p.name);
  CHECK(r.termination == "budget");
  CHECK(r.cases.size() == 25);
  int new_traces = 0;
  for (const CaseRecord& rec : r.cases) {
    CHECK(rec.origin == "random");
    CHECK(rec.accepted);
    CHECK(rec.tc.initial_state.norm() == doctest::Approx(1.0));
    new_traces += rec.new_traces;
  }
  CHECK(new_traces == r.distinct_traces);
  CHECK(r.distinct_traces >= 1);
  CHECK(r.solver_calls == 0);
  // No infeasibility information: every pair counts as feasible.
  CHECK(r.feasible_pairs == 2 * r.total_sites);

  Report again = run_baseline(p, BaselineKind::Vector, 25, 4, 99);
  CHECK(report_to_string(again, false) == report_to_string(r, false));

  Report circuit = run_baseline(p, BaselineKind::Circuit, 10, 2, 3);
  CHECK(circuit.cases.size() == 10);
  CHECK(circuit.termination == "budget");
}
