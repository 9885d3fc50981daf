// Command-line entry point: fuzz, exec, localize, pipeline, bench.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>
#include <string>
#include <vector>

#include "thinter/app.hpp"

namespace {

struct Flags {
  std::string config;
  std::string pair;
  std::string corpus;
  std::string log;
  std::string report;
  std::string summary;
  std::optional<std::int64_t> limit;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::vector<std::string> overrides;
  bool verbose = false;
};

void add_common(CLI::App& cmd, Flags& f, bool needs_pair) {
  cmd.add_option("--config", f.config, "INI config file (default: $THINTER_CONFIG)");
  auto* pair = cmd.add_option("--pair", f.pair, "pair manifest (corpus manifest for bench)");
  if (needs_pair) pair->required();
  cmd.add_option("--corpus", f.corpus, "corpus directory");
  cmd.add_option("--log", f.log, "execution log (JSON Lines)");
  cmd.add_option("--report", f.report, "report path (.json; a .txt copy is written too)");
  cmd.add_option("--summary", f.summary, "bench summary path");
  cmd.add_option("--limit", f.limit, "execute at most this many valid cases");
  cmd.add_option("--seed", f.seed, "fuzzer RNG seed");
  cmd.add_option("--workers", f.workers, "parallel workers")->check(CLI::PositiveNumber);
  cmd.add_option("--set", f.overrides, "override a config key (key=value)");
  cmd.add_flag("-v,--verbose", f.verbose, "debug logging");
}

thinter::AppConfig build_config(const Flags& f) {
  thinter::AppConfig cfg;
  std::string path = f.config;
  if (path.empty()) {
    if (const char* env = std::getenv("THINTER_CONFIG")) path = env;
  }
  if (!path.empty()) cfg.load_file(path);
  for (const auto& o : f.overrides) cfg.apply_override(o);
  if (!f.corpus.empty()) cfg.corpus_dir = f.corpus;
  if (!f.log.empty()) cfg.log_file = f.log;
  if (!f.report.empty()) cfg.report_file = f.report;
  if (!f.summary.empty()) cfg.summary_file = f.summary;
  if (f.limit) cfg.exec_limit = *f.limit;
  if (f.seed) cfg.fuzz.rng_seed = *f.seed;
  if (f.workers) cfg.workers = *f.workers;
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Localize translation errors by differential testing"};
  app.require_subcommand(1);
  Flags flags;

  using Command = int (*)(const thinter::AppConfig&, const std::filesystem::path&,
                          std::ostream&, std::ostream&);
  const std::vector<std::tuple<std::string, std::string, Command>> commands = {
      {"fuzz", "generate a test corpus by coverage-guided mutation", thinter::cmd_fuzz},
      {"exec", "run the corpus on both programs and log verdicts", thinter::cmd_exec},
      {"localize", "rank translated lines and write a report", thinter::cmd_localize},
      {"pipeline", "fuzz, exec and localize in sequence", thinter::cmd_pipeline},
      {"bench", "evaluate a corpus of pairs with known bugs", thinter::cmd_bench},
  };
  std::vector<std::pair<CLI::App*, Command>> subs;
  for (const auto& [name, help, fn] : commands) {
    auto* sub = app.add_subcommand(name, help);
    add_common(*sub, flags, true);
    subs.emplace_back(sub, fn);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  spdlog::set_default_logger(spdlog::stderr_color_mt("thinter"));
  spdlog::set_level(flags.verbose ? spdlog::level::debug : spdlog::level::warn);

  thinter::AppConfig cfg;
  try {
    cfg = build_config(flags);
  } catch (const thinter::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  for (const auto& [sub, fn] : subs)
    if (sub->parsed()) return fn(cfg, flags.pair, std::cout, std::cerr);
  return 2;
}
