/**
 * Copyright 2026, the qct developers.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace qct {

/**
 * Deterministic random source. All randomness in the library flows through
 * this class so a run is reproducible from its seed alone: the raw stream is
 * std::mt19937_64, which the standard pins bit-for-bit, and every derived
 * distribution below is computed explicitly instead of through the
 * implementation-defined <random> distribution adaptors.
 */
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random mantissa bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [lo, hi], both ends inclusive. Uses rejection
  /// sampling, so the result is exactly uniform.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(engine_());  // full range
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t draw;
    do {
      draw = engine_();
    } while (draw >= limit);
    return lo + static_cast<std::int64_t>(draw % span);
  }

  double uniform_real(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

  /// Standard normal deviate via Box-Muller. No cached spare: each call
  /// consumes exactly two engine draws, which keeps call sites reproducible
  /// independent of history.
  double gaussian() {
    const double u1 = 1.0 - uniform01();  // (0, 1]: log stays finite
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  /// Independent child stream. Mixing the salt through splitmix64 keeps
  /// children decorrelated even for adjacent salts.
  Rng split(std::uint64_t salt) {
    std::uint64_t z = next_u64() + salt + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return Rng(z ^ (z >> 31));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace qct
