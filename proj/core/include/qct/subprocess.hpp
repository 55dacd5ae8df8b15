/**
 * Copyright 2026, the qct developers.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */
#pragma once

#include <string>

namespace qct {

struct ProcessResult {
  int exit_code = -1;
  bool timed_out = false;
  std::string out;
  std::string err;
  double seconds = 0.0;
};

/**
 * Runs `sh -c command` in its own process group, captures stdout/stderr and
 * enforces a wall-clock deadline. On timeout the whole group is killed, so
 * solver children cannot linger. Each call is isolated; callers may run
 * several concurrently.
 */
ProcessResult run_process(const std::string& command, double timeout_seconds);

/// Absolute path of an executable found on PATH, or "" when absent.
std::string find_executable(const std::string& name);

}  // namespace qct
