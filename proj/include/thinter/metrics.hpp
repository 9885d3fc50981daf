#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "thinter/classifier.hpp"
#include "thinter/fuzzer.hpp"
#include "thinter/localizer.hpp"
#include "thinter/model.hpp"

namespace thinter {

struct ComplexityInputs {
  double s_difficulty = 0.0;  // [0, 10]
  double r_accept = 0.0;      // [0, 10]
  double c_cyc = 1.0;         // >= 1

  void validate() const;
};

enum class ComplexityLevel { kLow, kMedium, kHigh };
std::string_view to_string(ComplexityLevel l);

struct ComplexityScore {
  double score = 0.0;
  ComplexityLevel level = ComplexityLevel::kLow;
};

/// 0.33 weight on each factor, then Low < 4 <= Medium <= 7 < High.
ComplexityScore complexity_score(const ComplexityInputs& inputs);

/// 1 + lines whose control-flow keyword is if/for/while/case, plus every
/// `&&` and `||` on non-ignorable lines.
double estimate_cyclomatic(std::span<const std::string> text, const LanguageProfile& profile);

struct MetricCounts {
  std::int64_t n_all = 1;
  std::int64_t n_fixed = 0;
  std::int64_t n_attp = 0;

  void validate() const;
};

struct FixRatios {
  double r_fix = 0.0;
  double r_attp = 0.0;
};

FixRatios fix_ratios(const MetricCounts& counts);

struct GroundTruth {
  std::string pair_id;
  std::set<LineNo> buggy_lines;
};

/// One benchmark entry: the pair, its known bug lines and bundled seeds.
struct BenchPair {
  CodePair pair;
  GroundTruth truth;
  std::vector<TestCase> seeds;
  std::optional<ComplexityInputs> complexity;
};

struct BenchConfig {
  FuzzConfig fuzz;
  ScoringConfig scoring;
  // Executed-case budgets; nullopt means every generated valid case.
  std::vector<std::optional<std::int64_t>> budgets = {50, 200, std::nullopt};
  int workers = 1;
  const ProfileRegistry* profiles = nullptr;  // built-in profiles when null
};

struct ArmResult {
  std::optional<std::int64_t> budget;
  bool ok = false;
  std::string error;
  double r_reduc = 0.0;
  bool hit = false;
  FlagMode mode = FlagMode::kNone;
  std::int64_t records_used = 0;
  std::vector<LineNo> flagged;
};

struct PairResult {
  std::string pair_id;
  bool ok = false;
  std::string error;
  double coverage_fraction = 0.0;
  std::int64_t generated = 0;
  std::int64_t rejected = 0;
  std::int64_t executed = 0;
  std::optional<ComplexityScore> complexity;
  std::vector<ArmResult> arms;  // one per budget, same order
};

struct BudgetSummary {
  std::optional<std::int64_t> budget;
  std::int64_t pairs_evaluated = 0;
  double mean_r_reduc = 0.0;
  double hit_rate = 0.0;
};

struct CorpusSummary {
  std::vector<PairResult> pairs;
  std::vector<BudgetSummary> budgets;
};

/// True iff any buggy line was flagged.
bool is_hit(std::span<const LineNo> flagged, const std::set<LineNo>& buggy_lines);

/// Picks `budget` records uniformly without replacement (all when the budget
/// is absent or not smaller), preserving case order.
std::vector<ExecutionRecord> sample_records(std::span<const ExecutionRecord> records,
                                            std::optional<std::int64_t> budget,
                                            std::uint64_t seed);

/// Fuzz, execute once, then localize each budget arm on a sample of the
/// executed records. Pair failures are recorded, not thrown.
CorpusSummary evaluate_corpus(std::span<const BenchPair> pairs, const BenchConfig& cfg);

/// Mean r_reduc and hit rate per budget over pairs whose arm succeeded.
std::vector<BudgetSummary> summarize(std::span<const PairResult> pairs,
                                     std::span<const std::optional<std::int64_t>> budgets);

std::string summary_to_json(const CorpusSummary& summary);
std::string summary_to_text(const CorpusSummary& summary);

}  // namespace thinter
