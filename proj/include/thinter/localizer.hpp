#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "thinter/classifier.hpp"
#include "thinter/model.hpp"

namespace thinter {

class NoUsableRecords : public Error {
 public:
  NoUsableRecords() : Error("no usable records: every record is Excluded") {}
};

/// Weights of the statistics and expertise scores and the flagging rules.
/// Defaults keep a line covered only by failing runs above `flag_threshold`
/// and a simple line covered by passing runs well below it.
struct ScoringConfig {
  double base_score = 0.1;
  double theta_h1 = 2.0;   // every covering run fails
  double theta_h2 = 1.0;   // covering runs fail more often than not
  double theta_low = 0.25;
  double alpha_base = 0.2;
  double alpha_cf = 0.6;     // added for control flow
  double alpha_hdr = 1.5;    // multiplies scope headers
  double alpha_simple = 0.5; // multiplies scope-free statements
  double flag_threshold = 1.5;
  double anomaly_sigma = 2.0;

  void validate() const;
};

struct LineScore {
  LineNo line_no = 0;
  std::int64_t cf = 0;  // failing runs covering the line
  std::int64_t cp = 0;  // passing runs covering the line
  double stat_score = 0.0;
  double exp_score = 0.0;
  double overall = 0.0;
  LabelSet labels;
};

enum class FlagMode { kThreshold, kAnomaly, kNone };
std::string_view to_string(FlagMode m);

struct FlaggedLine {
  LineNo line_no = 0;
  double score = 0.0;
  LabelSet labels;
};

struct SuggestionReport {
  std::string pair_id;
  std::vector<FlaggedLine> flagged;  // descending score, then ascending line
  FlagMode mode = FlagMode::kNone;
  std::int64_t records_used = 0;
  double r_reduc = 1.0;
  std::vector<LineScore> scores;  // every line, for inspection; not serialized
};

double score_statistics(std::int64_t cf, std::int64_t cp, const ScoringConfig& cfg);
double score_expertise(LabelSet labels, const ScoringConfig& cfg);
double compute_r_reduc(std::int64_t flagged_count, std::int64_t line_count);

/// Fail/pass coverage counts per line; index 0 is line 1.
struct Spectrum {
  std::vector<std::int64_t> cf;
  std::vector<std::int64_t> cp;
  friend bool operator==(const Spectrum&, const Spectrum&) = default;
};

// Reference kernels. Excluded records are skipped; lines outside
// [1, line_count] are ignored.
Spectrum count_spectrum_serial(std::span<const ExecutionRecord> records, int line_count);
std::vector<LineScore> score_lines_serial(const Spectrum& spectrum,
                                          std::span<const LineClassification> classes,
                                          const ScoringConfig& cfg);

// OpenMP kernels; must agree exactly with the reference kernels.
Spectrum count_spectrum_parallel(std::span<const ExecutionRecord> records, int line_count);
std::vector<LineScore> score_lines_parallel(const Spectrum& spectrum,
                                            std::span<const LineClassification> classes,
                                            const ScoringConfig& cfg);

struct FlagResult {
  std::vector<FlaggedLine> flagged;
  FlagMode mode = FlagMode::kNone;
};

/// Threshold flagging with the mean + k·σ (population) fallback over
/// non-ignorable lines.
FlagResult select_flagged(std::span<const LineScore> scores, const ScoringConfig& cfg);

SuggestionReport localize(std::vector<ExecutionRecord> records,
                          std::span<const LineClassification> classes,
                          const CodePair& pair, const ScoringConfig& cfg);

std::string report_to_json(const SuggestionReport& report, const CodePair& pair);
std::string report_to_text(const SuggestionReport& report, const CodePair& pair);

}  // namespace thinter
