#include <gtest/gtest.h>

#include <cmath>
#include <nlohmann/json.hpp>
#include <random>

#include "thinter/localizer.hpp"

using namespace thinter;
using L = LineLabel;

namespace {

// Piecewise statistics score written out independently of the library.
double reference_stat(std::int64_t cf, std::int64_t cp) {
  if (cf == 0) return 0.1;
  const double p = static_cast<double>(cf) / static_cast<double>(cf + cp);
  if (cp == 0) return 0.1 + p * 2.0;
  if (2 * cf > cf + cp) return 0.1 + p * 1.0;
  return 0.1 + p * 0.25;
}

ExecutionRecord rec(std::int64_t id, Verdict v, std::vector<LineNo> lines) {
  ExecutionRecord r;
  r.case_id = id;
  r.verdict = v;
  if (v == Verdict::kExcluded) r.exclusion_reason = ExclusionReason::kSourceCrash;
  r.covered_lines = std::move(lines);
  return r;
}

CodePair pair_with_lines(int n) {
  CodePair p;
  p.pair_id = "p";
  for (int i = 0; i < n; ++i) p.translated_text.push_back("x" + std::to_string(i) + ";");
  return p;
}

std::vector<LineClassification> uniform_classes(int n, LabelSet labels) {
  std::vector<LineClassification> c(n);
  for (int i = 0; i < n; ++i) {
    c[i].line_no = i + 1;
    c[i].labels = labels;
  }
  return c;
}

std::vector<LineScore> scores_from(std::vector<double> overall) {
  std::vector<LineScore> s(overall.size());
  for (std::size_t i = 0; i < overall.size(); ++i) {
    s[i].line_no = static_cast<LineNo>(i + 1);
    s[i].overall = overall[i];
    s[i].labels = {L::kScopeBody};
  }
  return s;
}

}  // namespace

TEST(ScoreStatistics, Examples) {
  const ScoringConfig cfg;
  EXPECT_DOUBLE_EQ(score_statistics(3, 0, cfg), 2.1);
  EXPECT_DOUBLE_EQ(score_statistics(0, 5, cfg), 0.1);
  EXPECT_DOUBLE_EQ(score_statistics(3, 1, cfg), 0.85);
  EXPECT_DOUBLE_EQ(score_statistics(2, 2, cfg), 0.225);
  EXPECT_DOUBLE_EQ(score_statistics(0, 0, cfg), 0.1);
}

TEST(ScoreStatistics, MatchesReferenceBitForBit) {
  const ScoringConfig cfg;
  for (std::int64_t cf = 0; cf <= 50; ++cf)
    for (std::int64_t cp = 0; cf + cp <= 50; ++cp)
      ASSERT_EQ(score_statistics(cf, cp, cfg), reference_stat(cf, cp)) << cf << "," << cp;
}

TEST(ScoreStatistics, MonotoneInFailCount) {
  const ScoringConfig cfg;
  for (std::int64_t cp = 0; cp <= 50; ++cp)
    for (std::int64_t cf = 0; cf < 50; ++cf)
      EXPECT_GE(score_statistics(cf + 1, cp, cfg), score_statistics(cf, cp, cfg))
          << cf << "," << cp;
}

TEST(ScoreExpertise, Examples) {
  const ScoringConfig cfg;
  EXPECT_DOUBLE_EQ(score_expertise({L::kControlFlow, L::kScopeHeader}, cfg), 1.2);
  EXPECT_DOUBLE_EQ(score_expertise({L::kScopeBody, L::kSimple}, cfg), 0.1);
  EXPECT_EQ(score_expertise({L::kIgnorable}, cfg), 0.0);
  EXPECT_DOUBLE_EQ(score_expertise({L::kControlFlow, L::kScopeBody}, cfg), 0.8);
}

TEST(ScoringConfig, Validation) {
  ScoringConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.alpha_simple = 1.5;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.theta_h2 = 3.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.flag_threshold = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(RReduc, Examples) {
  EXPECT_DOUBLE_EQ(compute_r_reduc(10, 50), 0.8);
  EXPECT_EQ(compute_r_reduc(0, 50), 1.0);
  EXPECT_EQ(compute_r_reduc(50, 50), 0.0);
  EXPECT_THROW(compute_r_reduc(51, 50), Error);
  EXPECT_THROW(compute_r_reduc(0, 0), Error);
}

TEST(SelectFlagged, AnomalyFallback) {
  ScoringConfig cfg;
  cfg.flag_threshold = 10;
  const auto result = select_flagged(scores_from({1, 1, 1, 1, 9}), cfg);
  EXPECT_EQ(result.mode, FlagMode::kAnomaly);
  ASSERT_EQ(result.flagged.size(), 1u);
  EXPECT_EQ(result.flagged[0].line_no, 5);
}

TEST(SelectFlagged, UniformScoresGiveNone) {
  const auto result = select_flagged(scores_from({0.3, 0.3, 0.3}), ScoringConfig{});
  EXPECT_EQ(result.mode, FlagMode::kNone);
  EXPECT_TRUE(result.flagged.empty());
}

TEST(SelectFlagged, SpreadWithoutOutlierGivesNone) {
  // mean 0.5, sigma ~0.36: nothing reaches mean + 2 sigma.
  const auto result = select_flagged(scores_from({0.1, 0.3, 0.5, 0.7, 0.9, 1.0, 0.0}),
                                     ScoringConfig{});
  EXPECT_EQ(result.mode, FlagMode::kNone);
}

TEST(SelectFlagged, IgnorableLinesStayOutOfAnomalyPool) {
  auto scores = scores_from({0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 9});
  for (int i = 0; i < 6; ++i) scores[i].labels = {L::kIgnorable};
  ScoringConfig cfg;
  cfg.flag_threshold = 10;
  const auto result = select_flagged(scores, cfg);
  ASSERT_EQ(result.flagged.size(), 1u);
  EXPECT_EQ(result.flagged[0].line_no, 11);
}

TEST(SelectFlagged, OrderedByScoreThenLine) {
  const auto result = select_flagged(scores_from({2, 3, 2, 0.5, 3}), ScoringConfig{});
  EXPECT_EQ(result.mode, FlagMode::kThreshold);
  std::vector<LineNo> order;
  for (const auto& f : result.flagged) order.push_back(f.line_no);
  EXPECT_EQ(order, (std::vector<LineNo>{2, 5, 1, 3}));
}

TEST(SelectFlagged, ThresholdSetInvariantUnderRescaling) {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> score(0.0, 4.0);
  std::uniform_real_distribution<double> factor(0.01, 100.0);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> overall(1 + rng() % 30);
    for (auto& v : overall) v = score(rng);
    ScoringConfig cfg;
    const auto base = select_flagged(scores_from(overall), cfg);
    if (base.mode != FlagMode::kThreshold) continue;
    const double k = factor(rng);
    for (auto& v : overall) v *= k;
    cfg.flag_threshold *= k;
    const auto scaled = select_flagged(scores_from(overall), cfg);
    ASSERT_EQ(scaled.flagged.size(), base.flagged.size());
    for (std::size_t i = 0; i < base.flagged.size(); ++i)
      EXPECT_EQ(scaled.flagged[i].line_no, base.flagged[i].line_no);
  }
}

TEST(Localize, HeaderCoveredOnlyByFailuresIsFlagged) {
  const auto pair = pair_with_lines(3);
  auto classes = uniform_classes(3, {L::kScopeBody, L::kSimple});
  classes[1].labels = {L::kControlFlow, L::kScopeHeader};
  std::vector<ExecutionRecord> records = {rec(0, Verdict::kFail, {1, 2}),
                                          rec(1, Verdict::kFail, {2}),
                                          rec(2, Verdict::kFail, {2, 3}),
                                          rec(3, Verdict::kPass, {1, 3})};
  const auto report = localize(records, classes, pair, ScoringConfig{});
  EXPECT_EQ(report.mode, FlagMode::kThreshold);
  ASSERT_EQ(report.flagged.size(), 1u);
  EXPECT_EQ(report.flagged[0].line_no, 2);
  EXPECT_DOUBLE_EQ(report.flagged[0].score, 3.3);
  EXPECT_EQ(report.records_used, 4);
  EXPECT_DOUBLE_EQ(report.r_reduc, 1.0 - 1.0 / 3.0);
}

TEST(Localize, ExcludedRecordsAreInvisible) {
  const auto pair = pair_with_lines(2);
  const auto classes = uniform_classes(2, {L::kScopeBody});
  std::vector<ExecutionRecord> with = {rec(0, Verdict::kPass, {1}), rec(1, Verdict::kFail, {2}),
                                       rec(2, Verdict::kExcluded, {1, 2})};
  std::vector<ExecutionRecord> without = {with[0], with[1]};
  const auto a = localize(with, classes, pair, ScoringConfig{});
  const auto b = localize(without, classes, pair, ScoringConfig{});
  EXPECT_EQ(a.records_used, 2);
  ASSERT_EQ(a.scores.size(), b.scores.size());
  for (std::size_t i = 0; i < a.scores.size(); ++i) {
    EXPECT_EQ(a.scores[i].cf, b.scores[i].cf);
    EXPECT_EQ(a.scores[i].cp, b.scores[i].cp);
  }
}

TEST(Localize, AllExcludedThrows) {
  const auto pair = pair_with_lines(2);
  const auto classes = uniform_classes(2, {L::kScopeBody});
  std::vector<ExecutionRecord> records = {rec(0, Verdict::kExcluded, {1})};
  EXPECT_THROW(localize(records, classes, pair, ScoringConfig{}), NoUsableRecords);
  EXPECT_THROW(localize({}, classes, pair, ScoringConfig{}), NoUsableRecords);
}

TEST(Localize, AllPassUniformProgramFlagsNothing) {
  const auto pair = pair_with_lines(4);
  const auto classes = uniform_classes(4, {L::kScopeBody, L::kSimple});
  std::vector<ExecutionRecord> records = {rec(0, Verdict::kPass, {1, 2, 3, 4}),
                                          rec(1, Verdict::kPass, {1, 2})};
  const auto report = localize(records, classes, pair, ScoringConfig{});
  EXPECT_EQ(report.mode, FlagMode::kNone);
  EXPECT_EQ(report.r_reduc, 1.0);
  for (const auto& s : report.scores) EXPECT_EQ(s.stat_score, 0.1);
}

TEST(Localize, ScoreInvariants) {
  std::mt19937 rng(23);
  const LabelSet label_pool[] = {{L::kIgnorable},
                                 {L::kScopeBody, L::kSimple},
                                 {L::kControlFlow, L::kScopeHeader},
                                 {L::kControlFlow, L::kScopeBody},
                                 {L::kScopeHeader}};
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 30);
    const auto pair = pair_with_lines(n);
    auto classes = uniform_classes(n, {});
    for (auto& c : classes) c.labels = label_pool[rng() % 5];
    std::vector<ExecutionRecord> records;
    for (int k = 0; k < 1 + static_cast<int>(rng() % 20); ++k) {
      std::vector<LineNo> lines;
      for (int l = 1; l <= n; ++l)
        if (rng() % 2) lines.push_back(l);
      records.push_back(rec(k, rng() % 3 ? Verdict::kPass : Verdict::kFail, lines));
    }
    const auto report = localize(records, classes, pair, ScoringConfig{});
    EXPECT_EQ(report.mode == FlagMode::kNone, report.flagged.empty());
    EXPECT_DOUBLE_EQ(report.r_reduc,
                     1.0 - static_cast<double>(report.flagged.size()) / n);
    for (const auto& s : report.scores) {
      EXPECT_EQ(s.overall, s.stat_score + s.exp_score);
      if (s.labels.contains(L::kIgnorable)) {
        EXPECT_EQ(s.overall, 0.0);
      } else {
        if (s.cf + s.cp > 0) EXPECT_GE(s.stat_score, 0.1);
        if (s.cf == 0) EXPECT_EQ(s.stat_score, 0.1);
      }
    }
    // Deterministic regardless of record order.
    std::shuffle(records.begin(), records.end(), rng);
    const auto again = localize(records, classes, pair, ScoringConfig{});
    ASSERT_EQ(again.flagged.size(), report.flagged.size());
    for (std::size_t i = 0; i < report.flagged.size(); ++i)
      EXPECT_EQ(again.flagged[i].line_no, report.flagged[i].line_no);
  }
}

TEST(Localize, BestLineHasStrictMaximumStatistic) {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 29);
    const int cases = 2 + static_cast<int>(rng() % 19);
    const int fails = 1 + static_cast<int>(rng() % (cases - 1));
    const LineNo best = 1 + static_cast<LineNo>(rng() % n);
    std::vector<ExecutionRecord> records;
    for (int k = 0; k < cases; ++k) {
      const bool fail = k < fails;
      std::vector<LineNo> lines;
      for (LineNo l = 1; l <= n; ++l) {
        if (l == best ? fail : (rng() % 2 == 0 || (!fail && k == fails))) lines.push_back(l);
      }
      records.push_back(rec(k, fail ? Verdict::kFail : Verdict::kPass, lines));
    }
    const auto spectrum = count_spectrum_serial(records, n);
    const auto scores = score_lines_serial(spectrum, uniform_classes(n, {L::kScopeBody}),
                                           ScoringConfig{});
    for (const auto& s : scores)
      if (s.line_no != best) ASSERT_GT(scores[best - 1].stat_score, s.stat_score);
  }
}

TEST(Kernels, ParallelMatchesSerial) {
  std::mt19937 rng(41);
  const LabelSet label_pool[] = {{L::kIgnorable},
                                 {L::kScopeBody, L::kSimple},
                                 {L::kControlFlow, L::kScopeHeader}};
  for (int trial = 0; trial < 50; ++trial) {
    const int n = static_cast<int>(rng() % 300);
    std::vector<ExecutionRecord> records;
    for (int k = 0; k < static_cast<int>(rng() % 400); ++k) {
      std::vector<LineNo> lines;
      for (LineNo l = 0; l <= n + 1; ++l)
        if (rng() % 4 == 0) lines.push_back(l);
      records.push_back(rec(k, static_cast<Verdict>(rng() % 3), lines));
    }
    const auto serial = count_spectrum_serial(records, n);
    const auto parallel = count_spectrum_parallel(records, n);
    ASSERT_EQ(serial, parallel);
    auto classes = uniform_classes(n, {});
    for (auto& c : classes) c.labels = label_pool[rng() % 3];
    const auto a = score_lines_serial(serial, classes, ScoringConfig{});
    const auto b = score_lines_parallel(parallel, classes, ScoringConfig{});
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(a[i].overall, b[i].overall);
      EXPECT_EQ(a[i].cf, b[i].cf);
      EXPECT_EQ(a[i].cp, b[i].cp);
    }
  }
}

TEST(Kernels, ShapeMismatchThrows) {
  Spectrum s{{0, 0}, {0, 0}};
  EXPECT_THROW(score_lines_serial(s, uniform_classes(3, {L::kSimple}), ScoringConfig{}), Error);
}

TEST(Report, JsonAndText) {
  CodePair pair;
  pair.pair_id = "demo";
  pair.translated_text = {"int main() {", "  if (a < b < c) {", "  }", "}"};
  SuggestionReport r;
  r.pair_id = "demo";
  r.mode = FlagMode::kThreshold;
  r.records_used = 9;
  r.r_reduc = 0.75;
  r.flagged = {{2, 3.3, {L::kControlFlow, L::kScopeHeader}}};
  const auto j = nlohmann::json::parse(report_to_json(r, pair));
  EXPECT_EQ(j["mode"], "threshold");
  EXPECT_EQ(j["records_used"], 9);
  EXPECT_EQ(j["flagged"][0]["line"], 2);
  EXPECT_EQ(j["flagged"][0]["text"], "  if (a < b < c) {");
  EXPECT_EQ(j["flagged"][0]["labels"], nlohmann::json({"control_flow", "scope_header"}));
  const auto text = report_to_text(r, pair);
  EXPECT_NE(text.find("if (a < b < c)"), std::string::npos);
  r.flagged.clear();
  r.mode = FlagMode::kNone;
  EXPECT_NE(report_to_text(r, pair).find("no suspicious lines"), std::string::npos);
}
