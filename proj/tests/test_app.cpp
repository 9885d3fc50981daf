#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "test_support.hpp"
#include "thinter/app.hpp"
#include "thinter/runner.hpp"
#include "thinter/subprocess.hpp"

using namespace thinter;
using thinter::testing::fixture_manifest;
namespace fs = std::filesystem;

namespace {

struct Workspace {
  TempDir dir{"thinter-app-test"};
  AppConfig cfg;

  Workspace() {
    cfg.corpus_dir = dir.path() / "corpus";
    cfg.log_file = dir.path() / "exec.jsonl";
    cfg.report_file = dir.path() / "report.json";
    cfg.summary_file = dir.path() / "summary.json";
    cfg.fuzz.max_cases = 30;
    cfg.fuzz.coverage_target = 1.0;
    cfg.fuzz.rng_seed = 3;
  }
};

struct Captured {
  int rc;
  std::string out;
  std::string err;
};

template <typename Cmd>
Captured run(Cmd cmd, const AppConfig& cfg, const std::string& fixture) {
  std::ostringstream out, err;
  const int rc = cmd(cfg, fixture_manifest(fixture), out, err);
  return {rc, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Config, OverridesAndFile) {
  AppConfig cfg;
  cfg.apply_override("scoring.flag_threshold=2.5");
  cfg.apply_override("fuzz.time_budget_s=1.5");
  cfg.apply_override("bench.budgets=10, all");
  cfg.apply_override("run.exec_limit=7");
  EXPECT_EQ(cfg.scoring.flag_threshold, 2.5);
  EXPECT_EQ(cfg.fuzz.time_budget.count(), 1500);
  ASSERT_EQ(cfg.budgets.size(), 2u);
  EXPECT_EQ(cfg.budgets[0], 10);
  EXPECT_FALSE(cfg.budgets[1]);
  EXPECT_EQ(cfg.exec_limit, 7);
  EXPECT_THROW(cfg.apply_override("nope.key=1"), ConfigError);
  EXPECT_THROW(cfg.apply_override("scoring.base_score=abc"), ConfigError);
  EXPECT_THROW(cfg.apply_override("novalue"), ConfigError);

  TempDir dir("thinter-cfg-test");
  {
    std::ofstream(dir.path() / "c.ini") << "[fuzz]\nmax_cases = 12\nallowed_characters = 01\\s\n"
                                           "[runner]\nnormalization = exact\n"
                                           "[run]\nprofiles_file = p.json\n";
  }
  AppConfig from_file;
  from_file.load_file(dir.path() / "c.ini");
  EXPECT_EQ(from_file.fuzz.max_cases, 12);
  EXPECT_TRUE(from_file.fuzz.filter.accepts("10 1"));
  EXPECT_FALSE(from_file.fuzz.filter.accepts("2"));
  EXPECT_EQ(from_file.normalization, Normalization::kExact);
  EXPECT_EQ(from_file.profiles_file, dir.path() / "p.json");
  EXPECT_THROW(from_file.load_file(dir.path() / "missing.ini"), ConfigError);
}

TEST(Config, ValidateRejectsBadValues) {
  AppConfig cfg;
  cfg.workers = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.scoring.alpha_hdr = 0.5;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(Manifest, ParsesFixture) {
  const auto spec = thinter::testing::load_fixture("range_count");
  EXPECT_EQ(spec.pair.pair_id, "range_count");
  EXPECT_TRUE(spec.pair.translated_runner.coverage_command_template);
  EXPECT_FALSE(spec.buggy_lines.empty());
  ASSERT_TRUE(spec.complexity);
  EXPECT_GE(spec.complexity->c_cyc, 1.0);
  EXPECT_EQ(text_report_path("a/r.json"), fs::path("a/r.txt"));
}

TEST(Manifest, RelativePathsAndErrors) {
  TempDir dir("thinter-manifest-test");
  fs::create_directories(dir.path() / "p" / "seeds");
  { std::ofstream(dir.path() / "p" / "t.cpp") << "int main() {}\n"; }
  nlohmann::json j = {{"pair_id", "x"},
                      {"source_cmd", "cat {input}"},
                      {"translated_cmd", "cat {input}"},
                      {"translated_source", "t.cpp"}};
  const auto spec = parse_pair(j, dir.path() / "p", AppConfig{});
  EXPECT_EQ(spec.seeds_dir, dir.path() / "p" / "seeds");
  EXPECT_EQ(spec.pair.translated_line_count(), 1);
  j.erase("source_cmd");
  EXPECT_THROW(parse_pair(j, dir.path() / "p", AppConfig{}), ConfigError);
  EXPECT_THROW(load_pair_manifest(dir.path() / "none.json", AppConfig{}), ConfigError);
}

TEST(Commands, FuzzExecLocalizeOnBugPair) {
  Workspace ws;
  const auto fuzz = run(cmd_fuzz, ws.cfg, "branches8");
  ASSERT_EQ(fuzz.rc, 0) << fuzz.err;
  EXPECT_NE(fuzz.out.find("coverage: "), std::string::npos);
  EXPECT_TRUE(fs::exists(ws.cfg.corpus_dir / "corpus.json"));

  auto limited = ws.cfg;
  limited.exec_limit = 5;
  const auto exec5 = run(cmd_exec, limited, "value_diff");
  ASSERT_EQ(exec5.rc, 0) << exec5.err;
  EXPECT_EQ(read_log_file(ws.cfg.log_file).size(), 5u);

  const auto exec = run(cmd_exec, ws.cfg, "value_diff");
  ASSERT_EQ(exec.rc, 0) << exec.err;
  const auto records = read_log_file(ws.cfg.log_file);
  for (const auto& r : records) EXPECT_EQ(r.verdict, Verdict::kFail);

  const auto loc = run(cmd_localize, ws.cfg, "value_diff");
  ASSERT_EQ(loc.rc, 0) << loc.err;
  const auto report = nlohmann::json::parse(slurp(ws.cfg.report_file));
  EXPECT_EQ(report["mode"], "threshold");
  EXPECT_EQ(report["records_used"], static_cast<std::int64_t>(records.size()));
  EXPECT_TRUE(fs::exists(text_report_path(ws.cfg.report_file)));
  EXPECT_NE(loc.out.find("suspicious lines"), std::string::npos);
}

TEST(Commands, UniformProgramReportsNothing) {
  Workspace ws;
  ASSERT_EQ(run(cmd_pipeline, ws.cfg, "hello").rc, 0);
  const auto report = nlohmann::json::parse(slurp(ws.cfg.report_file));
  EXPECT_EQ(report["mode"], "none");
  EXPECT_TRUE(report["flagged"].empty());
  EXPECT_EQ(report["r_reduc"], 1.0);
  EXPECT_NE(slurp(text_report_path(ws.cfg.report_file)).find("no suspicious lines"),
            std::string::npos);
}

TEST(Commands, AllExcludedIsAnError) {
  Workspace ws;
  const auto result = run(cmd_pipeline, ws.cfg, "source_crash");
  EXPECT_EQ(result.rc, 2);
  EXPECT_NE(result.err.find("no usable records"), std::string::npos);
}

TEST(Commands, AllSeedsInvalid) {
  Workspace ws;
  ws.cfg.fuzz.filter = FilterConfig::from_characters("#");
  const auto result = run(cmd_fuzz, ws.cfg, "identical");
  EXPECT_EQ(result.rc, 2);
  EXPECT_NE(result.err.find("all seeds invalid"), std::string::npos);
}

TEST(Commands, MissingCoverageCommand) {
  Workspace ws;
  auto j = nlohmann::json::parse(slurp(fixture_manifest("identical")));
  j.erase("coverage_cmd");
  const auto manifest = ws.dir.path() / "nocov.json";
  { std::ofstream(manifest) << j.dump(); }
  std::ostringstream out, err;
  EXPECT_EQ(cmd_fuzz(ws.cfg, manifest, out, err), 2);
  EXPECT_NE(err.str().find("coverage"), std::string::npos);
}

TEST(Commands, UnwritableLog) {
  Workspace ws;
  ASSERT_EQ(run(cmd_fuzz, ws.cfg, "identical").rc, 0);
  ws.cfg.log_file = "/proc/thinter/exec.jsonl";
  const auto result = run(cmd_exec, ws.cfg, "identical");
  EXPECT_EQ(result.rc, 2);
  EXPECT_NE(result.err.find("error:"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  TempDir dir("thinter-cli-test");
  const std::string cli = THINTER_CLI;
  const auto none = fs::path("/dev/null");
  const auto run_cli = [&](const std::string& args) {
    return run_shell("cd " + shell_quote(dir.path().string()) + " && " + shell_quote(cli) +
                         " " + args,
                     none, std::chrono::seconds(60));
  };
  EXPECT_EQ(run_cli("--help").exit_code, 0);
  EXPECT_EQ(run_cli("").exit_code, 2);
  EXPECT_EQ(run_cli("fuzz").exit_code, 2);
  EXPECT_EQ(run_cli("fuzz --pair x.json --set bogus=1").exit_code, 2);
  EXPECT_EQ(run_cli("fuzz --pair x.json --workers 0").exit_code, 2);
  const auto manifest = shell_quote(fixture_manifest("hello").string());
  const auto ok = run_cli("pipeline --pair " + manifest + " --set fuzz.max_cases=10");
  EXPECT_EQ(ok.exit_code, 0) << ok.stderr_bytes;
  EXPECT_NE(ok.stdout_bytes.find("no suspicious lines"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir.path() / "thinter-out" / "report.json"));
}
