/**
 * Copyright 2026, the qct developers.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qct/driver.hpp"

namespace qct {

/**
 * Reports, test cases and benchmark manifests are written in a small YAML
 * subset (scalars, flow lists/maps, one level of block lists). Field order
 * is fixed; all doubles use shortest round-trip formatting, so a report is
 * byte-stable for a fixed run.
 */
void write_report(const Report& r, std::ostream& out,
                  bool include_timings = true);
std::string report_to_string(const Report& r, bool include_timings = true);

void write_test_case(const TestCase& tc, int num_qubits, std::ostream& out);
std::string test_case_to_string(const TestCase& tc, int num_qubits);

struct ManifestEntry {
  std::string file;
  std::string structure;
  std::string scale;
  std::uint64_t seed = 0;
};

struct Manifest {
  int qubits = 1;
  double delta = 0.01;
  std::vector<ManifestEntry> entries;
};

void write_manifest(const Manifest& m, std::ostream& out);
/// Throws ValidationError on malformed input.
Manifest parse_manifest(const std::string& text);

}  // namespace qct
