#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>

#include "test_support.hpp"
#include "thinter/fuzzer.hpp"
#include "thinter/subprocess.hpp"

using namespace thinter;
using namespace std::chrono_literals;
using thinter::testing::load_fixture;
using thinter::testing::make_case;

namespace {

// Line k (1..10) is covered when the payload contains the digit k-1.
std::optional<std::set<LineNo>> digit_probe(const TestCase& tc, std::set<LineNo>& instr) {
  for (LineNo l = 1; l <= 10; ++l) instr.insert(l);
  std::set<LineNo> covered;
  for (char c : tc.payload)
    if (c >= '0' && c <= '9') covered.insert(c - '0' + 1);
  return covered;
}

FuzzConfig quick_config(std::int64_t max_cases) {
  FuzzConfig cfg;
  cfg.max_cases = max_cases;
  cfg.time_budget = 60s;
  cfg.coverage_target = 1.0;
  cfg.rng_seed = 11;
  return cfg;
}

}  // namespace

TEST(Mutators, Examples) {
  EXPECT_EQ(mutators::insert("abc", 3, 'd'), "abcd");
  EXPECT_EQ(mutators::numeric_arith("5", 0, NumericOp::kPlusOne), "6");
  EXPECT_EQ(mutators::boundary("10 20", 1, 2147483647), "10 2147483647");
}

TEST(Mutators, Operators) {
  EXPECT_EQ(mutators::substitute("abc", 1, 'x'), "axc");
  EXPECT_EQ(mutators::erase("abc", 0), "bc");
  EXPECT_EQ(mutators::duplicate_token("3 45\n", 1), "3 45 45\n");
  EXPECT_EQ(mutators::numeric_arith("a -7 b", 0, NumericOp::kNegate), "a 7 b");
  EXPECT_EQ(mutators::numeric_arith("1 2", 1, NumericOp::kMinusTen), "1 -8");
  EXPECT_EQ(mutators::splice("abcd", 2, "wxyz", 1), "abxyz");
  EXPECT_THROW(mutators::numeric_arith("99999999999999999999", 0, NumericOp::kPlusOne),
               std::out_of_range);
  EXPECT_THROW(mutators::duplicate_token("   ", 0), std::out_of_range);
}

TEST(Mutators, NumberSpansTakeSignOnlyAfterSeparator) {
  const auto nums = mutators::numbers("-3 a-4 10");
  ASSERT_EQ(nums.size(), 3u);
  EXPECT_EQ(nums[0].begin, 0u);
  EXPECT_EQ(nums[1].begin, 5u);  // "a-4" is a hyphen, not a sign
  EXPECT_EQ(mutators::tokens(" a  bc\n").size(), 2u);
}

TEST(Mutate, SetsLineageAndIsDeterministic) {
  const auto parent = make_case(4, "12 34\n");
  std::vector<TestCase> pool = {parent, make_case(5, "7\n")};
  Rng a(99), b(99);
  for (int i = 0; i < 200; ++i) {
    const auto x = mutate(parent, a, pool, FilterConfig::defaults(), 100 + i);
    const auto y = mutate(parent, b, pool, FilterConfig::defaults(), 100 + i);
    EXPECT_EQ(x.payload, y.payload);
    EXPECT_EQ(x.parent_id, 4);
    EXPECT_EQ(x.case_id, 100 + i);
    EXPECT_EQ(x.origin, Origin::kMutant);
    EXPECT_FALSE(x.valid);
  }
}

TEST(Mutate, EmptyPayloadStillMutates) {
  Rng rng(1);
  for (int i = 0; i < 50; ++i)
    EXPECT_FALSE(mutate(make_case(0, ""), rng, {}, FilterConfig::defaults(), 1).payload.empty());
}

TEST(Filter, Examples) {
  const auto f = FilterConfig::defaults();
  EXPECT_TRUE(filter_case(make_case(0, "12 34\n", false), f).valid);
  EXPECT_FALSE(filter_case(make_case(0, "12\x07"), f).valid);
  EXPECT_FALSE(filter_case(make_case(0, "h\xC3\xA9llo"), f).valid);
  EXPECT_TRUE(filter_case(make_case(0, ""), f).valid);
}

TEST(Filter, CustomCharactersAndValidation) {
  const auto f = FilterConfig::from_characters("0123456789 \n");
  EXPECT_TRUE(f.accepts("1 2\n"));
  EXPECT_FALSE(f.accepts("-1"));
  EXPECT_THROW(FilterConfig{}.validate(), ConfigError);
}

TEST(ShouldRetain, Examples) {
  EXPECT_TRUE(should_retain({3, 7}, {3}));
  EXPECT_FALSE(should_retain({3}, {3, 7}));
  EXPECT_FALSE(should_retain({}, {}));
}

TEST(FuzzConfig, Validation) {
  FuzzConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.coverage_target = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.max_cases = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(Campaign, StopsImmediatelyWhenSeedsReachTarget) {
  FuzzConfig cfg;  // default target 0.90
  std::vector<TestCase> seeds = {make_case(0, "012345678")};
  const auto state = fuzz_campaign(digit_probe, seeds, cfg);
  EXPECT_DOUBLE_EQ(state.coverage_fraction(), 0.9);
  EXPECT_EQ(state.stop_reason, StopReason::kCoverageTarget);
  EXPECT_EQ(state.generated_count, 1);
  EXPECT_EQ(state.cases.size(), 1u);
}

TEST(Campaign, ExploresToTargetAndKeepsInvariants) {
  std::vector<TestCase> seeds = {make_case(0, "1 2\n"), make_case(1, "hello\x01")};
  double last = 0.0;
  std::size_t last_queue = 0;
  std::set<LineNo> last_cov;
  auto observer = [&](const CorpusState& s) {
    EXPECT_GE(s.coverage_fraction(), last);
    EXPECT_TRUE(std::includes(s.cumulative_coverage.begin(), s.cumulative_coverage.end(),
                              last_cov.begin(), last_cov.end()));
    if (s.queue.size() > last_queue && last_queue > 0) {
      const auto& added = s.queue.back();
      EXPECT_TRUE(added.valid);
      std::set<LineNo> instr;
      EXPECT_TRUE(should_retain(*digit_probe(added, instr), last_cov));
    }
    last = s.coverage_fraction();
    last_queue = s.queue.size();
    last_cov = s.cumulative_coverage;
  };
  const auto state = fuzz_campaign(digit_probe, seeds, quick_config(5000), observer);
  EXPECT_EQ(state.stop_reason, StopReason::kCoverageTarget);
  EXPECT_EQ(state.coverage_fraction(), 1.0);
  EXPECT_EQ(state.cases.size(), static_cast<std::size_t>(state.generated_count));
  EXPECT_GE(state.rejected_count, 1);  // the control-byte seed
  for (std::size_t i = 0; i < state.cases.size(); ++i)
    EXPECT_EQ(state.cases[i].case_id, static_cast<std::int64_t>(i));
}

TEST(Campaign, StopsAtMaxCases) {
  std::vector<TestCase> seeds = {make_case(0, "5")};
  auto never_new = [](const TestCase&, std::set<LineNo>& instr) -> std::optional<std::set<LineNo>> {
    instr.insert({1, 2});
    return std::set<LineNo>{1};
  };
  const auto state = fuzz_campaign(never_new, seeds, quick_config(40));
  EXPECT_EQ(state.stop_reason, StopReason::kMaxCases);
  EXPECT_EQ(state.generated_count, 40);
  EXPECT_EQ(state.queue.size(), 1u);
}

TEST(Campaign, SameSeedSameCorpus) {
  std::vector<TestCase> seeds = {make_case(0, "3 4\n"), make_case(1, "8")};
  const auto a = fuzz_campaign(digit_probe, seeds, quick_config(300));
  const auto b = fuzz_campaign(digit_probe, seeds, quick_config(300));
  ASSERT_EQ(a.cases.size(), b.cases.size());
  for (std::size_t i = 0; i < a.cases.size(); ++i) {
    EXPECT_EQ(a.cases[i].payload, b.cases[i].payload);
    EXPECT_EQ(a.cases[i].parent_id, b.cases[i].parent_id);
  }
  auto other = quick_config(300);
  other.rng_seed = 12;
  const auto c = fuzz_campaign(digit_probe, seeds, other);
  bool differs = c.cases.size() != a.cases.size();
  for (std::size_t i = 2; !differs && i < a.cases.size(); ++i)
    differs = a.cases[i].payload != c.cases[i].payload;
  EXPECT_TRUE(differs);
}

TEST(Campaign, ParallelWorkersKeepInvariants) {
  std::vector<TestCase> seeds = {make_case(0, "1")};
  auto cfg = quick_config(400);
  cfg.workers = 4;
  const auto state = fuzz_campaign(digit_probe, seeds, cfg);
  EXPECT_LE(state.generated_count, 400);
  for (const auto& q : state.queue) EXPECT_TRUE(q.valid);
}

TEST(Campaign, Errors) {
  std::vector<TestCase> bad = {make_case(0, std::string("\x00", 1))};
  EXPECT_THROW(fuzz_campaign(digit_probe, bad, FuzzConfig{}), AllSeedsInvalid);
  std::vector<TestCase> ok = {make_case(0, "1")};
  auto failing = [](const TestCase&, std::set<LineNo>&) -> std::optional<std::set<LineNo>> {
    return std::nullopt;
  };
  EXPECT_THROW(fuzz_campaign(failing, ok, FuzzConfig{}), CoverageUnavailable);
  EXPECT_THROW(fuzz_campaign(digit_probe, {}, FuzzConfig{}), Error);
  CodePair no_cov;
  EXPECT_THROW(fuzz_campaign(no_cov, ok, FuzzConfig{}), CoverageUnavailable);
}

TEST(CampaignFixture, UnreachableCodeStopsAtBudget) {
  const auto spec = load_fixture("unreachable");
  const auto seeds = load_seeds(spec.seeds_dir);
  FuzzConfig cfg;
  cfg.time_budget = 3s;
  const auto start = std::chrono::steady_clock::now();
  const auto state = fuzz_campaign(spec.pair, seeds, cfg);
  EXPECT_GE(std::chrono::steady_clock::now() - start, 3s);
  EXPECT_EQ(state.stop_reason, StopReason::kTimeBudget);
  EXPECT_GT(state.coverage_fraction(), 0.0);
  EXPECT_LT(state.coverage_fraction(), 0.9);
  EXPECT_FALSE(state.cumulative_coverage.contains(9));
}

TEST(CampaignFixture, RejectionRateOnBundledCorpusIsLow) {
  const auto pairs = load_corpus_manifest(
      std::filesystem::path(THINTER_FIXTURES) / "corpus.json", AppConfig{});
  ASSERT_GE(pairs.size(), 10u);
  std::int64_t generated = 0;
  std::int64_t rejected = 0;
  for (const auto& spec : pairs) {
    FuzzConfig cfg = quick_config(80);
    const auto state = fuzz_campaign(spec.pair, load_seeds(spec.seeds_dir), cfg);
    generated += state.generated_count;
    rejected += state.rejected_count;
  }
  const double rate = static_cast<double>(rejected) / static_cast<double>(generated);
  RecordProperty("rejection_rate", std::to_string(rate));
  EXPECT_LT(rate, 0.2);
}

TEST(CorpusFiles, RoundTrip) {
  TempDir dir("thinter-corpus-test");
  std::vector<TestCase> cases = {make_case(0, std::string("a\0b", 3)), make_case(1, "x", false)};
  cases[1].origin = Origin::kMutant;
  cases[1].parent_id = 0;
  { std::ofstream(dir.path() / "case_77.bin") << "stale"; }
  write_corpus(dir.path(), cases);
  EXPECT_FALSE(std::filesystem::exists(dir.path() / "case_77.bin"));
  const auto back = read_corpus(dir.path());
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].payload, cases[0].payload);
  EXPECT_TRUE(back[0].valid);
  EXPECT_EQ(back[1].parent_id, 0);
  EXPECT_EQ(back[1].origin, Origin::kMutant);
  EXPECT_FALSE(back[1].valid);
}

TEST(CorpusFiles, SeedsLoadSortedByName) {
  TempDir dir("thinter-seeds-test");
  { std::ofstream(dir.path() / "b.txt") << "2"; }
  { std::ofstream(dir.path() / "a.txt") << "1"; }
  const auto seeds = load_seeds(dir.path());
  ASSERT_EQ(seeds.size(), 2u);
  EXPECT_EQ(seeds[0].payload, "1");
  EXPECT_EQ(seeds[1].payload, "2");
  EXPECT_THROW(read_corpus(dir.path() / "missing"), Error);
}
