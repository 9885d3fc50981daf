#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "thinter/model.hpp"
#include "thinter/subprocess.hpp"

namespace thinter {

class MalformedCoverage : public Error {
 public:
  MalformedCoverage(const std::string& what, int report_line)
      : Error(what + " (report line " + std::to_string(report_line) + ")"),
        report_line_(report_line) {}
  int report_line() const { return report_line_; }

 private:
  int report_line_;
};

/// Per-line execution counts of the translated program.
using CoverageMap = std::map<LineNo, std::int64_t>;

/// Reads the DA records of the first SF section of an LCOV tracefile.
/// Other record types are skipped.
CoverageMap parse_lcov(std::string_view report);

/// Lines with a nonzero count.
std::vector<LineNo> covered_lines(const CoverageMap& coverage);

/// Runs the coverage command of `profile` on `payload_path`. Returns nullopt
/// (and logs a warning) when the command is absent, fails, or produces an
/// unreadable report. RunnerSpawnError still propagates.
std::optional<CoverageMap> collect_coverage(const RunnerProfile& profile,
                                            const std::filesystem::path& payload_path,
                                            const std::filesystem::path& scratch_dir);

/// Writes `payload` to a fresh file inside `dir`.
std::filesystem::path write_payload(const std::filesystem::path& dir,
                                    std::int64_t case_id, std::string_view payload);

/// Runs source and translated programs on one valid case and applies the
/// differential oracle.
ExecutionRecord run_one(const CodePair& pair, const TestCase& test_case);

using RecordSink = std::function<void(const ExecutionRecord&)>;

/// Executes the first `limit` valid cases of `corpus` (all when absent) on
/// `workers` threads. `sink` sees records in completion order and is never
/// called concurrently. The result is ordered by case_id.
std::vector<ExecutionRecord> run_batch(const CodePair& pair,
                                       std::span<const TestCase> corpus,
                                       std::optional<std::int64_t> limit,
                                       int workers = 1,
                                       const RecordSink& sink = {});

// JSON Lines execution log.
std::string record_to_json_line(const ExecutionRecord& record);
ExecutionRecord record_from_json_line(std::string_view line);
void write_log(std::ostream& out, std::span<const ExecutionRecord> records);
std::vector<ExecutionRecord> read_log(std::istream& in);
std::vector<ExecutionRecord> read_log_file(const std::filesystem::path& path);

/// Stable sort by case_id, applied before localization.
void sort_by_case_id(std::vector<ExecutionRecord>& records);

/// Re-applies the oracle to stored outputs: every Pass record must still
/// pass and every Excluded record must carry a reason.
bool log_is_self_consistent(std::span<const ExecutionRecord> records,
                            Normalization normalization);

}  // namespace thinter
