#pragma once

#include <bitset>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "thinter/model.hpp"

namespace thinter {

class AllSeedsInvalid : public Error {
 public:
  AllSeedsInvalid() : Error("all seeds invalid") {}
};

class CoverageUnavailable : public Error {
 public:
  explicit CoverageUnavailable(const std::string& detail)
      : Error("coverage unavailable: " + detail) {}
};

/// Whitelist of payload bytes accepted by the validity filter.
struct FilterConfig {
  std::bitset<256> allowed;

  /// ASCII alphanumerics, space, newline, tab and , . ; : [ ] ( ) - _ "
  static FilterConfig defaults();
  static FilterConfig from_characters(std::string_view chars);
  bool accepts(std::string_view payload) const;
  std::vector<unsigned char> allowed_bytes() const;
  void validate() const;
};

struct FuzzConfig {
  double coverage_target = 0.90;
  std::chrono::milliseconds time_budget{60'000};
  std::int64_t max_cases = 10'000;
  std::uint64_t rng_seed = 0;
  FilterConfig filter = FilterConfig::defaults();
  int workers = 1;

  void validate() const;
};

enum class MutationOp {
  kSubstitute,
  kInsert,
  kDelete,
  kDuplicateToken,
  kNumericArith,
  kBoundary,
  kSplice,
};
inline constexpr int kMutationOpCount = 7;

enum class NumericOp { kPlusOne, kMinusOne, kPlusTen, kMinusTen, kNegate };
inline constexpr int kNumericOpCount = 5;

// Individual operators; token indices count whitespace-separated tokens
// (kDuplicateToken) or decimal integer literals (numeric ops).
namespace mutators {
Bytes substitute(std::string_view payload, std::size_t pos, unsigned char byte);
Bytes insert(std::string_view payload, std::size_t pos, unsigned char byte);
Bytes erase(std::string_view payload, std::size_t pos);
Bytes duplicate_token(std::string_view payload, std::size_t token_index);
Bytes numeric_arith(std::string_view payload, std::size_t number_index, NumericOp op);
Bytes boundary(std::string_view payload, std::size_t number_index, std::int64_t value);
Bytes splice(std::string_view head, std::size_t head_cut, std::string_view tail,
             std::size_t tail_cut);

struct Span {
  std::size_t begin;
  std::size_t end;
};
std::vector<Span> tokens(std::string_view payload);
std::vector<Span> numbers(std::string_view payload);
}  // namespace mutators

inline constexpr std::int64_t kBoundaryValues[] = {0, 1, -1, 2147483647};

/// Deterministic engine; distributions are hand-rolled so replays match
/// across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  // Uniform in [0, n); n must be > 0.
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

 private:
  std::mt19937_64 engine_;
};

/// Applies one randomly chosen operator. `pool` supplies splice partners.
/// Operators that do not fit the payload fall back to insertion or
/// substitution. The result has parent_id set and valid == false.
TestCase mutate(const TestCase& parent, Rng& rng, std::span<const TestCase> pool,
                const FilterConfig& filter, std::int64_t new_id);

/// Evaluates the whitelist and sets `valid`.
TestCase filter_case(TestCase candidate, const FilterConfig& filter);

/// True iff the mutant covers at least one line not yet in `cumulative`.
bool should_retain(const std::set<LineNo>& mutant_coverage,
                   const std::set<LineNo>& cumulative);

enum class StopReason { kCoverageTarget, kTimeBudget, kMaxCases };
std::string_view to_string(StopReason r);

struct CorpusState {
  std::vector<TestCase> queue;  // retained cases used as mutation parents
  std::vector<TestCase> cases;  // every seed and generated case, in id order
  std::set<LineNo> cumulative_coverage;
  std::set<LineNo> instrumentable_lines;
  std::int64_t rejected_count = 0;
  std::int64_t generated_count = 0;
  StopReason stop_reason = StopReason::kTimeBudget;

  double coverage_fraction() const;
  double rejection_rate() const;
};

/// Per-case coverage probe. nullopt means the coverage command failed.
using CoverageProbe =
    std::function<std::optional<std::set<LineNo>>(const TestCase&, std::set<LineNo>& instrumentable)>;

/// Probe backed by the translated runner's coverage command.
CoverageProbe make_command_probe(const CodePair& pair);

/// Called after seeds are loaded and after every evaluated mutant.
using CampaignObserver = std::function<void(const CorpusState&)>;

CorpusState fuzz_campaign(const CodePair& pair, std::span<const TestCase> seeds,
                          const FuzzConfig& cfg, const CampaignObserver& observer = {});

/// Same loop with an injected coverage probe.
CorpusState fuzz_campaign(const CoverageProbe& probe, std::span<const TestCase> seeds,
                          const FuzzConfig& cfg, const CampaignObserver& observer = {});

// Corpus directory: case_<id>.bin payloads plus corpus.json.
void write_corpus(const std::filesystem::path& dir, std::span<const TestCase> cases);
std::vector<TestCase> read_corpus(const std::filesystem::path& dir);
std::string corpus_manifest_json(std::span<const TestCase> cases);

/// Reads every regular file of `dir` (sorted by name) as a seed.
std::vector<TestCase> load_seeds(const std::filesystem::path& dir);

}  // namespace thinter
