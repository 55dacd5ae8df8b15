#include <cstdint>
#include <sstream>
#include <string>

#include "doctest.h"
#include "qct/driver.hpp"
#include "qct/error.hpp"
#include "qct/report.hpp"
#include "qct/sim.hpp"

using namespace qct;

namespace {

/// A hand-built two-case report covering every section of the format.
Report demo_report() {
  Report r;
  r.program = "demo";
  r.seed = 7;
  r.termination = "tree-explored";
  r.iterations = 2;
  r.total_sites = 1;
  r.covered = {{0, false}, {0, true}};
  r.feasible_pairs = 2;
  r.distinct_traces = 2;
  r.observed_results = {0, 1};
  r.solver_calls = 1;
  r.solver_sat = 1;
  r.solver_seconds = 0.25;
  r.quality_entries.push_back(QualityEntry{1, 0, 0.28});

  CaseRecord initial;
  initial.origin = "initial";
  initial.accepted = true;
  initial.new_traces = 1;
  initial.tc.initial_state = init_state(1);
  Trace t0;
  t0.result = 0;
  initial.traces.push_back(t0);
  r.cases.push_back(initial);

  CaseRecord solved;
  solved.origin = "solver";
  solved.target_site = 0;
  solved.target_polarity = 1;
  solved.accepted = true;
  solved.new_traces = 1;
  solved.tc.initial_state.num_qubits = 1;
  solved.tc.initial_state.amps = {{0.6, 0.0}, {0.8, 0.0}};
  solved.tc.classical["k"] = std::int64_t{2};
  Trace t1;
  t1.result = 1;
  solved.traces.push_back(t1);
  r.cases.push_back(solved);
  return r;
}

}  // namespace

TEST_CASE("report serialization is frozen") {
  const std::string expected = R"(schema: qct-report/1
program: demo
seed: 7
termination: tree-explored
iterations: 2
sites: 1
coverage: 1
feasible_pairs: 2
feasible_coverage: 1
distinct_traces: 2
observed_results: [0, 1]
covered:
  - {site: 0, polarity: false}
  - {site: 0, polarity: true}
unsat_branches: []
timeout_branches: []
abandoned_branches: []
unreached_sites: []
solver:
  calls: 1
  sat: 1
  unsat: 0
  timeouts: 0
  errors: 0
quality:
  - {case: 1, site: 0, value: 0.28}
quality_mean: 0.28
cases:
  - origin: initial
    target: none
    accepted: true
    new_traces: 1
    results: [0]
    classical: {}
    state:
      - [1, 0]
      - [0, 0]
  - origin: solver
    target: {site: 0, polarity: true}
    accepted: true
    new_traces: 1
    results: [1]
    classical: {k: 2}
    state:
      - [0.6, 0]
      - [0.8, 0]
)";
  CHECK(report_to_string(demo_report(), false) == expected);
}

TEST_CASE("timings are optional and off-by-string") {
  const std::string with = report_to_string(demo_report(), true);
  const std::string without = report_to_string(demo_report(), false);
  CHECK(with.find("  seconds: 0.25\n") != std::string::npos);
  CHECK(without.find("seconds") == std::string::npos);
}

TEST_CASE("empty report sections collapse to flow lists") {
  Report r;
  r.program = "empty";
  r.termination = "tree-explored";
  const std::string s = report_to_string(r, false);
  CHECK(s.find("covered: []\n") != std::string::npos);
  CHECK(s.find("unsat_branches: []\n") != std::string::npos);
  CHECK(s.find("quality: []\n") != std::string::npos);
  CHECK(s.find("quality_mean") == std::string::npos);
  CHECK(s.find("observed_results: []\n") != std::string::npos);
}

TEST_CASE("test case serialization") {
  TestCase tc;
  tc.initial_state.num_qubits = 1;
  tc.initial_state.amps = {{0.6, 0.0}, {0.0, -0.8}};
  tc.classical["alice"] = std::int64_t{3};
  tc.classical["x"] = 0.5;
  const std::string expected = R"(schema: qct-testcase/1
qubits: 1
classical: {alice: 3, x: 0.5}
state:
  - [0.6, 0]
  - [0, -0.8]
)";
  CHECK(test_case_to_string(tc, 1) == expected);
}

TEST_CASE("manifest round-trips through its parser") {
  Manifest m;
  m.qubits = 2;
  m.delta = 0.01;
  m.entries.push_back(ManifestEntry{"b00.qcp", "simple", "small", 5});
  m.entries.push_back(ManifestEntry{"b01.qcp", "nested", "large", 17});
  std::ostringstream out;
  write_manifest(m, out);
  const std::string text = out.str();
  CHECK(text.find("schema: qct-manifest/1") == 0);
  CHECK(text.find("- {file: b00.qcp, structure: simple, scale: small, "
                  "seed: 5}") != std::string::npos);

  Manifest parsed = parse_manifest(text);
  CHECK(parsed.qubits == 2);
  CHECK(parsed.delta == 0.01);
  REQUIRE(parsed.entries.size() == 2);
  CHECK(parsed.entries[0].file == "b00.qcp");
  CHECK(parsed.entries[1].structure == "nested");
  CHECK(parsed.entries[1].seed == 17);

  // Comments and blank lines are tolerated.
  Manifest relaxed = parse_manifest(
      "# generated\nschema: qct-manifest/1\n\nqubits: 1\ndelta: 0.05\n"
      "programs: []\n");
  CHECK(relaxed.entries.empty());
  CHECK(relaxed.delta == 0.05);
}

TEST_CASE("manifest parser rejects malformed input") {
  CHECK_THROWS_AS(parse_manifest("qubits: 1\n"), ValidationError);
  CHECK_THROWS_AS(parse_manifest("schema: qct-manifest/2\n"), ValidationError);
  CHECK_THROWS_AS(
      parse_manifest("schema: qct-manifest/1\nwhat is this line\n"),
      ValidationError);
  CHECK_THROWS_AS(
      parse_manifest("schema: qct-manifest/1\nprograms:\n"
                     "  - {structure: simple, scale: small, seed: 1}\n"),
      ValidationError);
  CHECK_THROWS_AS(
      parse_manifest("schema: qct-manifest/1\nprograms:\n"
                     "  - {file: a.qcp, color: red}\n"),
      ValidationError);
}
