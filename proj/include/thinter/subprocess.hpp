#pragma once

#include <chrono>
#include <filesystem>
#include <string>

#include "thinter/model.hpp"

namespace thinter {

class RunnerSpawnError : public Error {
 public:
  using Error::Error;
};

enum class ExitStatus { kOk, kNonzeroExit, kTimeout };

struct RunOutcome {
  ExitStatus exit_status = ExitStatus::kOk;
  Bytes stdout_bytes;
  Bytes stderr_bytes;
  std::int64_t duration_ms = 0;
  int exit_code = 0;    // valid when the process exited normally
  int term_signal = 0;  // nonzero when killed by a signal
};

/// Runs `command` through /bin/sh in its own process group with `stdin_path`
/// as standard input. The whole group is killed once `timeout` elapses.
///
/// Exit codes 126/127 from the shell mean the command could not be launched
/// and raise RunnerSpawnError, as does a failure to fork or open stdin.
RunOutcome run_shell(const std::string& command,
                     const std::filesystem::path& stdin_path,
                     std::chrono::milliseconds timeout);

/// Quotes a string for safe interpolation into a /bin/sh command line.
std::string shell_quote(std::string_view s);

/// Replaces every occurrence of `{key}` in `tmpl` with `value`.
std::string substitute(std::string tmpl, std::string_view key,
                       std::string_view value);

/// Scratch directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(std::string_view prefix = "thinter");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace thinter
