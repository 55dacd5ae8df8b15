/**
 * Copyright 2026, the qct developers.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */
#include "qct/subprocess.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>

#include "qct/error.hpp"

namespace qct {

ProcessResult run_process(const std::string& command,
                          double timeout_seconds) {
  int out_pipe[2];
  int err_pipe[2];
  if (pipe(out_pipe) != 0 || pipe(err_pipe) != 0) {
    throw SolverError("pipe() failed: " + std::string(strerror(errno)));
  }
  const auto start = std::chrono::steady_clock::now();
  const pid_t pid = fork();
  if (pid < 0) {
    throw SolverError("fork() failed: " + std::string(strerror(errno)));
  }
  if (pid == 0) {
    // Child: own process group so a timeout can kill grandchildren too.
    setpgid(0, 0);
    dup2(out_pipe[1], STDOUT_FILENO);
    dup2(err_pipe[1], STDERR_FILENO);
    close(out_pipe[0]);
    close(out_pipe[1]);
    close(err_pipe[0]);
    close(err_pipe[1]);
    execl("/bin/sh", "sh", "-c", command.c_str(), nullptr);
    _exit(127);
  }
  setpgid(pid, pid);  // also from the parent: closes the startup race
  close(out_pipe[1]);
  close(err_pipe[1]);

  ProcessResult result;
  struct pollfd fds[2] = {{out_pipe[0], POLLIN, 0}, {err_pipe[0], POLLIN, 0}};
  bool open_fd[2] = {true, true};
  std::string* sinks[2] = {&result.out, &result.err};
  char buf[4096];

  const auto deadline =
      start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                  std::chrono::duration<double>(timeout_seconds));
  while (open_fd[0] || open_fd[1]) {
    const auto now = std::chrono::steady_clock::now();
    if (timeout_seconds > 0.0 && now >= deadline) {
      result.timed_out = true;
      kill(-pid, SIGKILL);
      break;
    }
    int wait_ms = -1;
    if (timeout_seconds > 0.0) {
      wait_ms = static_cast<int>(
          std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now)
              .count());
      if (wait_ms < 1) wait_ms = 1;
      if (wait_ms > 200) wait_ms = 200;
    }
    const int ready = poll(fds, 2, wait_ms);
    if (ready < 0) {
      if (errno == EINTR) continue;
      kill(-pid, SIGKILL);
      break;
    }
    for (int i = 0; i < 2; ++i) {
      if (!open_fd[i]) continue;
      if (fds[i].revents & (POLLIN | POLLHUP)) {
        const ssize_t n = read(fds[i].fd, buf, sizeof buf);
        if (n > 0) {
          sinks[i]->append(buf, static_cast<std::size_t>(n));
        } else {
          open_fd[i] = false;
          fds[i].fd = -1;
        }
      } else if (fds[i].revents & (POLLERR | POLLNVAL)) {
        open_fd[i] = false;
        fds[i].fd = -1;
      }
    }
  }
  // Drain whatever arrived before a kill.
  for (int i = 0; i < 2; ++i) {
    if (!open_fd[i]) continue;
    fcntl(fds[i].fd, F_SETFL, O_NONBLOCK);
    ssize_t n;
    while ((n = read(fds[i].fd, buf, sizeof buf)) > 0) {
      sinks[i]->append(buf, static_cast<std::size_t>(n));
    }
  }
  close(out_pipe[0]);
  close(err_pipe[0]);

  int status = 0;
  waitpid(pid, &status, 0);
  if (result.timed_out) {
    // Reap any group stragglers; ignore errors (group may be gone).
    kill(-pid, SIGKILL);
  }
  if (WIFEXITED(status)) {
    result.exit_code = WEXITSTATUS(status);
  } else if (WIFSIGNALED(status)) {
    result.exit_code = 128 + WTERMSIG(status);
  }
  result.seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return result;
}

std::string find_executable(const std::string& name) {
  if (name.find('/') != std::string::npos) {
    return access(name.c_str(), X_OK) == 0 ? name : "";
  }
  const char* path = std::getenv("PATH");
  if (path == nullptr) return "";
  std::string remaining = path;
  std::size_t pos = 0;
  while (pos <= remaining.size()) {
    const std::size_t next = remaining.find(':', pos);
    const std::string dir =
        remaining.substr(pos, next == std::string::npos ? next : next - pos);
    if (!dir.empty()) {
      const std::string candidate = dir + "/" + name;
      if (access(candidate.c_str(), X_OK) == 0) return candidate;
    }
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return "";
}

}  // namespace qct
