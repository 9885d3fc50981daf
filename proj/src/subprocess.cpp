#include "thinter/subprocess.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <system_error>
#include <utility>
#include <vector>

namespace thinter {

namespace {

constexpr std::size_t kMaxCapture = 16u << 20;

struct Fd {
  int fd = -1;
  Fd() = default;
  explicit Fd(int f) : fd(f) {}
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  Fd(Fd&& o) noexcept : fd(std::exchange(o.fd, -1)) {}
  ~Fd() { reset(); }
  void reset() {
    if (fd >= 0) ::close(fd);
    fd = -1;
  }
};

void make_pipe(Fd& read_end, Fd& write_end) {
  int p[2];
  if (::pipe2(p, O_CLOEXEC) != 0)
    throw RunnerSpawnError(std::string("pipe: ") + std::strerror(errno));
  read_end.fd = p[0];
  write_end.fd = p[1];
}

}  // namespace

std::string shell_quote(std::string_view s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'')
      out += "'\\''";
    else
      out += c;
  }
  out += '\'';
  return out;
}

std::string substitute(std::string tmpl, std::string_view key,
                       std::string_view value) {
  const std::string needle = "{" + std::string(key) + "}";
  std::size_t pos = 0;
  while ((pos = tmpl.find(needle, pos)) != std::string::npos) {
    tmpl.replace(pos, needle.size(), value);
    pos += value.size();
  }
  return tmpl;
}

RunOutcome run_shell(const std::string& command,
                     const std::filesystem::path& stdin_path,
                     std::chrono::milliseconds timeout) {
  using Clock = std::chrono::steady_clock;

  Fd in{::open(stdin_path.c_str(), O_RDONLY | O_CLOEXEC)};
  if (in.fd < 0)
    throw RunnerSpawnError("cannot open input " + stdin_path.string() + ": " +
                           std::strerror(errno));
  Fd out_r, out_w, err_r, err_w;
  make_pipe(out_r, out_w);
  make_pipe(err_r, err_w);

  const auto start = Clock::now();
  const pid_t pid = ::fork();
  if (pid < 0) throw RunnerSpawnError(std::string("fork: ") + std::strerror(errno));
  if (pid == 0) {
    ::setpgid(0, 0);
    ::dup2(in.fd, STDIN_FILENO);
    ::dup2(out_w.fd, STDOUT_FILENO);
    ::dup2(err_w.fd, STDERR_FILENO);
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  // Set the group from the parent as well so a kill before the child's own
  // setpgid still reaches it.
  ::setpgid(pid, pid);
  in.reset();
  out_w.reset();
  err_w.reset();

  RunOutcome outcome;
  std::array<pollfd, 2> fds{pollfd{out_r.fd, POLLIN, 0},
                            pollfd{err_r.fd, POLLIN, 0}};
  std::array<Bytes*, 2> sinks{&outcome.stdout_bytes, &outcome.stderr_bytes};
  const auto deadline = start + timeout;
  bool timed_out = false;
  int open_streams = 2;
  std::vector<char> buf(1 << 16);

  while (open_streams > 0) {
    const auto now = Clock::now();
    if (now >= deadline) {
      timed_out = true;
      break;
    }
    const auto remaining =
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now);
    const int rc = ::poll(fds.data(), fds.size(),
                          static_cast<int>(std::max<std::int64_t>(1, remaining.count())));
    if (rc < 0) {
      if (errno == EINTR) continue;
      break;
    }
    for (std::size_t i = 0; i < fds.size(); ++i) {
      if (fds[i].fd < 0 || fds[i].revents == 0) continue;
      const ssize_t n = ::read(fds[i].fd, buf.data(), buf.size());
      if (n > 0) {
        if (sinks[i]->size() < kMaxCapture)
          sinks[i]->append(buf.data(), static_cast<std::size_t>(n));
      } else if (n == 0 || errno != EINTR) {
        fds[i].fd = -1;
        --open_streams;
      }
    }
  }

  int status = 0;
  if (timed_out) {
    ::kill(-pid, SIGKILL);
    ::waitpid(pid, &status, 0);
  } else {
    // Streams closed; wait for exit but still honor the deadline in case a
    // detached grandchild kept the pipes while the shell lingers.
    while (true) {
      const pid_t r = ::waitpid(pid, &status, WNOHANG);
      if (r == pid) break;
      if (r < 0 && errno != EINTR) break;
      if (Clock::now() >= deadline) {
        timed_out = true;
        ::kill(-pid, SIGKILL);
        ::waitpid(pid, &status, 0);
        break;
      }
      ::usleep(500);
    }
  }
  // Reap anything left in the group.
  ::kill(-pid, SIGKILL);

  outcome.duration_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            Clock::now() - start)
                            .count();
  if (timed_out) {
    outcome.exit_status = ExitStatus::kTimeout;
    outcome.duration_ms = std::max<std::int64_t>(outcome.duration_ms, timeout.count());
    return outcome;
  }
  if (WIFEXITED(status)) {
    outcome.exit_code = WEXITSTATUS(status);
    if (outcome.exit_code == 126 || outcome.exit_code == 127) {
      throw RunnerSpawnError("cannot launch command (shell status " +
                             std::to_string(outcome.exit_code) + "): " + command +
                             (outcome.stderr_bytes.empty()
                                  ? ""
                                  : "\n" + outcome.stderr_bytes));
    }
    outcome.exit_status =
        outcome.exit_code == 0 ? ExitStatus::kOk : ExitStatus::kNonzeroExit;
  } else if (WIFSIGNALED(status)) {
    outcome.term_signal = WTERMSIG(status);
    outcome.exit_status = ExitStatus::kNonzeroExit;
  } else {
    outcome.exit_status = ExitStatus::kNonzeroExit;
  }
  return outcome;
}

TempDir::TempDir(std::string_view prefix) {
  std::string tmpl =
      (std::filesystem::temp_directory_path() / (std::string(prefix) + "-XXXXXX"))
          .string();
  if (::mkdtemp(tmpl.data()) == nullptr)
    throw Error(std::string("mkdtemp: ") + std::strerror(errno));
  path_ = tmpl;
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

}  // namespace thinter
