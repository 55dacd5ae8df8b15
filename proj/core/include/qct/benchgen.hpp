/**
 * Copyright 2026, the qct developers.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */
#pragma once

#include <cstdint>
#include <string>

#include "qct/driver.hpp"
#include "qct/ir.hpp"
#include "qct/rng.hpp"
#include "qct/sim.hpp"

namespace qct {

enum class BenchScale { Small, Medium, Large };
enum class BenchStructure { Simple, Nested, Multiway, Multiparam };

std::string scale_name(BenchScale scale);
std::string structure_name(BenchStructure structure);
/// Throws ValidationError on an unknown name.
BenchScale scale_from_name(const std::string& name);
BenchStructure structure_from_name(const std::string& name);

struct BenchSpec {
  int qubits = 1;
  BenchScale scale = BenchScale::Small;
  BenchStructure structure = BenchStructure::Simple;
  std::uint64_t seed = 0;
  /// Tolerance baked into generated state conditions.
  double delta = 0.01;
  /// Pin a state-equality condition to the first branch site instead of
  /// drawing the kind at random.
  bool force_eq_first = false;
};

/// Gate operations per root-to-leaf path for a scale (5 / 10 / 20).
int scale_ops(BenchScale scale);

/**
 * Deterministic random program: same spec, same program. All branch paths
 * carry scale_ops() gate operations; a state-equality condition appears at
 * most once and only at the first branch site, and its target distribution
 * is exported through the expects clause.
 */
Program generate_benchmark(const BenchSpec& spec);
std::string generate_benchmark_text(const BenchSpec& spec);

/// Haar-like state: complex Gaussian amplitudes, normalized.
StateVector random_state(int num_qubits, Rng& rng);
/// |0..0> pushed through `depth` layers of random rotations and CNOTs.
StateVector random_circuit_input(int num_qubits, Rng& rng, int depth = 3);

enum class BaselineKind { Vector, Circuit };

/**
 * Random-input baseline over `budget` sampled test cases, each executed
 * `repeats` times. Classical ints draw uniformly from [0, 7], reals from
 * [0, 1). Coverage and quality land in the same Report shape the concolic
 * driver produces; quality is scored at the first state-equality site.
 */
Report run_baseline(const Program& p, BaselineKind kind, int budget,
                    int repeats, std::uint64_t seed);

}  // namespace qct
