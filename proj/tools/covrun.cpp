// Runs a gcc --coverage binary with its .gcda output redirected to a private
// directory, then converts the gcov JSON for the chosen source into an LCOV
// tracefile. Safe to run concurrently against the same binary.
//
//   thinter-covrun --out report.info [--source translated.cpp] -- ./prog args

#include <sys/wait.h>
#include <unistd.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "thinter/subprocess.hpp"

namespace fs = std::filesystem;

namespace {

int run_child(const std::vector<std::string>& argv, const fs::path& prefix) {
  std::vector<char*> args;
  for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
  args.push_back(nullptr);
  const auto prefix_str = prefix.string();
  const pid_t pid = ::fork();
  if (pid < 0) return -1;
  if (pid == 0) {
    ::setenv("GCOV_PREFIX", prefix_str.c_str(), 1);
    ::setenv("GCOV_PREFIX_STRIP", "0", 1);
    ::execvp(args[0], args.data());
    ::_exit(127);
  }
  int status = 0;
  ::waitpid(pid, &status, 0);
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  return 128 + WTERMSIG(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"run a --coverage binary and emit LCOV"};
  std::string out_path;
  std::string source;
  std::vector<std::string> command;
  app.add_option("--out", out_path, "LCOV tracefile to write")->required();
  app.add_option("--source", source, "only report files whose path ends with this");
  app.add_option("command", command, "program and arguments")->required();
  app.allow_extras(false);
  CLI11_PARSE(app, argc, argv);

  thinter::TempDir prefix("thinter-gcda");
  const int child_rc = run_child(command, prefix.path());
  if (child_rc == 127) {
    std::cerr << "covrun: cannot execute " << command.front() << "\n";
    return 127;
  }

  std::map<std::string, std::map<long, long long>> per_file;
  bool any = false;
  for (const auto& entry : fs::recursive_directory_iterator(prefix.path())) {
    if (entry.path().extension() != ".gcda") continue;
    const auto rel = fs::relative(entry.path(), prefix.path());
    auto gcno = fs::path("/") / rel;
    gcno.replace_extension(".gcno");
    std::error_code ec;
    auto local_gcno = entry.path();
    local_gcno.replace_extension(".gcno");
    fs::copy_file(gcno, local_gcno, fs::copy_options::overwrite_existing, ec);
    if (ec) {
      std::cerr << "covrun: missing notes file " << gcno << "\n";
      continue;
    }
    const auto cmd = "cd " + thinter::shell_quote(entry.path().parent_path().string()) +
                     " && gcov -j -t " + thinter::shell_quote(entry.path().filename().string());
    const auto devnull = fs::path("/dev/null");
    const auto res = thinter::run_shell(cmd, devnull, std::chrono::seconds(30));
    if (res.exit_status != thinter::ExitStatus::kOk) {
      std::cerr << "covrun: gcov failed: " << res.stderr_bytes << "\n";
      continue;
    }
    // gcov may emit one JSON document per line when given several files.
    std::istringstream docs(res.stdout_bytes);
    std::string doc;
    while (std::getline(docs, doc)) {
      if (doc.empty()) continue;
      const auto j = nlohmann::json::parse(doc, nullptr, false);
      if (j.is_discarded()) continue;
      for (const auto& file : j.value("files", nlohmann::json::array())) {
        const auto name = file.value("file", std::string());
        if (!source.empty() ? !name.ends_with(source) : name.starts_with("/usr/")) continue;
        auto& lines = per_file[name];
        for (const auto& line : file.value("lines", nlohmann::json::array())) {
          lines[line.value("line_number", 0L)] += line.value("count", 0LL);
          any = true;
        }
      }
    }
  }
  if (!any) {
    std::cerr << "covrun: no coverage data (program exit " << child_rc << ")\n";
    return 1;
  }

  std::ofstream out(out_path, std::ios::trunc);
  for (const auto& [file, lines] : per_file) {
    out << "TN:\nSF:" << file << "\n";
    long hit = 0;
    for (const auto& [line, count] : lines) {
      out << "DA:" << line << "," << count << "\n";
      hit += count > 0;
    }
    out << "LF:" << lines.size() << "\nLH:" << hit << "\nend_of_record\n";
  }
  return out ? 0 : 1;
}
