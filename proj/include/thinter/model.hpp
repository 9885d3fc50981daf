#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace thinter {

// Program input/output is kept as raw bytes; std::string is used as the
// byte container and never assumed to hold valid UTF-8.
using Bytes = std::string;

// 1-indexed line number in the translated program.
using LineNo = int;

/// Base class for every error the pipeline reports to callers.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class Normalization { kExact, kTrimTrailingWhitespace };

std::string_view to_string(Normalization n);
Normalization parse_normalization(std::string_view s);

struct RunnerProfile {
  std::string run_command_template;
  std::optional<std::string> coverage_command_template;
  double timeout_s = 5.0;
  Normalization normalization = Normalization::kTrimTrailingWhitespace;

  // Throws ConfigError when the template or timeout is unusable.
  void validate() const;
};

struct CodePair {
  std::string pair_id;
  RunnerProfile source_runner;
  RunnerProfile translated_runner;
  std::vector<std::string> translated_text;
  std::string language_profile_id = "cpp";

  int translated_line_count() const {
    return static_cast<int>(translated_text.size());
  }
  void validate() const;
};

enum class Origin { kSeed, kMutant };

std::string_view to_string(Origin o);
Origin parse_origin(std::string_view s);

struct TestCase {
  std::int64_t case_id = 0;
  Bytes payload;
  Origin origin = Origin::kSeed;
  std::optional<std::int64_t> parent_id;
  bool valid = false;
};

enum class Verdict { kPass, kFail, kExcluded };
enum class ExclusionReason { kSourceCrash, kBothTimeout, kSourceTimeout };

std::string_view to_string(Verdict v);
Verdict parse_verdict(std::string_view s);
std::string_view to_string(ExclusionReason r);
ExclusionReason parse_exclusion_reason(std::string_view s);

struct ExecutionRecord {
  std::int64_t case_id = 0;
  Verdict verdict = Verdict::kPass;
  std::optional<ExclusionReason> exclusion_reason;
  Bytes source_output;
  Bytes translated_output;
  std::vector<LineNo> covered_lines;  // sorted, unique
  std::int64_t wall_time_ms = 0;

  friend bool operator==(const ExecutionRecord&,
                         const ExecutionRecord&) = default;
};

/// Identity for kExact. For kTrimTrailingWhitespace, strips spaces and tabs
/// at the end of every line, then trailing newlines of the whole output.
Bytes normalize_output(std::string_view raw, Normalization normalization);

/// The differential oracle: Pass iff both outputs normalize to equal bytes.
Verdict oracle_verdict(std::string_view source_output,
                       std::string_view translated_output,
                       Normalization normalization);

}  // namespace thinter
