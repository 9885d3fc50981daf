#pragma once

#include <filesystem>
#include <iosfwd>
#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>
#include <vector>

#include "thinter/classifier.hpp"
#include "thinter/fuzzer.hpp"
#include "thinter/localizer.hpp"
#include "thinter/metrics.hpp"

namespace thinter {

struct AppConfig {
  FuzzConfig fuzz;
  ScoringConfig scoring;
  double runner_timeout_s = 5.0;
  Normalization normalization = Normalization::kTrimTrailingWhitespace;
  std::string language_profile_id = "cpp";
  std::optional<std::filesystem::path> profiles_file;
  std::optional<std::int64_t> exec_limit;
  int workers = 1;
  std::vector<std::optional<std::int64_t>> budgets = {50, 200, std::nullopt};
  std::filesystem::path corpus_dir = "thinter-out/corpus";
  std::filesystem::path log_file = "thinter-out/exec.jsonl";
  std::filesystem::path report_file = "thinter-out/report.json";
  std::filesystem::path summary_file = "thinter-out/summary.json";

  void validate() const;
  /// Sets one dotted key such as "scoring.flag_threshold". Unknown keys and
  /// unparsable values raise ConfigError.
  void set(const std::string& key, const std::string& value);
  /// Applies every key of an INI-style file ([section] then key = value).
  void load_file(const std::filesystem::path& path);
  /// Applies "key=value".
  void apply_override(const std::string& assignment);
};

/// A pair as described by a pair manifest, plus where its seeds live.
struct PairSpec {
  CodePair pair;
  std::filesystem::path translated_source;
  std::filesystem::path seeds_dir;
  std::set<LineNo> buggy_lines;
  std::optional<ComplexityInputs> complexity;
};

/// Parses one pair object; relative paths resolve against `base_dir`.
/// Runner timeout, normalization and profile fall back to `cfg`.
PairSpec parse_pair(const nlohmann::json& j, const std::filesystem::path& base_dir,
                    const AppConfig& cfg);
PairSpec load_pair_manifest(const std::filesystem::path& path, const AppConfig& cfg);
std::vector<PairSpec> load_corpus_manifest(const std::filesystem::path& path,
                                           const AppConfig& cfg);

std::filesystem::path text_report_path(const std::filesystem::path& json_report);

// Subcommands. Each returns the process exit code: 0 when the requested
// artifact was produced, 2 on usage, configuration or data errors.
int cmd_fuzz(const AppConfig& cfg, const std::filesystem::path& pair_manifest,
             std::ostream& out, std::ostream& err);
int cmd_exec(const AppConfig& cfg, const std::filesystem::path& pair_manifest,
             std::ostream& out, std::ostream& err);
int cmd_localize(const AppConfig& cfg, const std::filesystem::path& pair_manifest,
                 std::ostream& out, std::ostream& err);
int cmd_pipeline(const AppConfig& cfg, const std::filesystem::path& pair_manifest,
                 std::ostream& out, std::ostream& err);
int cmd_bench(const AppConfig& cfg, const std::filesystem::path& corpus_manifest,
              std::ostream& out, std::ostream& err);

}  // namespace thinter
