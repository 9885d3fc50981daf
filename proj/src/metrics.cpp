#include "thinter/metrics.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <numeric>
#include <sstream>

#include "thinter/runner.hpp"

namespace thinter {

void ComplexityInputs::validate() const {
  const auto in = [](double v, double lo, double hi) {
    return std::isfinite(v) && v >= lo && v <= hi;
  };
  if (!in(s_difficulty, 0, 10) || !in(r_accept, 0, 10) || !std::isfinite(c_cyc) || c_cyc < 1)
    throw ConfigError("complexity inputs out of range");
}

std::string_view to_string(ComplexityLevel l) {
  switch (l) {
    case ComplexityLevel::kLow:
      return "Low";
    case ComplexityLevel::kMedium:
      return "Medium";
    case ComplexityLevel::kHigh:
      return "High";
  }
  return "Low";
}

ComplexityScore complexity_score(const ComplexityInputs& inputs) {
  inputs.validate();
  ComplexityScore out;
  // Equal weights, so factor the 0.33 out of the sum.
  out.score = 0.33 * (inputs.s_difficulty + inputs.r_accept + inputs.c_cyc);
  if (out.score < 4.0)
    out.level = ComplexityLevel::kLow;
  else if (out.score <= 7.0)
    out.level = ComplexityLevel::kMedium;
  else
    out.level = ComplexityLevel::kHigh;
  return out;
}

double estimate_cyclomatic(std::span<const std::string> text, const LanguageProfile& profile) {
  static constexpr std::string_view kDecisionKeywords[] = {"if", "for", "while", "case"};
  const auto classes = classify_lines(text, profile);
  double decisions = 0;
  for (const auto& c : classes) {
    if (c.labels.contains(LineLabel::kIgnorable)) continue;
    const std::string_view line = text[c.line_no - 1];
    if (c.labels.contains(LineLabel::kControlFlow) &&
        std::any_of(std::begin(kDecisionKeywords), std::end(kDecisionKeywords),
                    [&](std::string_view kw) { return contains_word(line, kw); })) {
      decisions += 1;
    }
    for (std::string_view op : {"&&", "||"})
      for (auto pos = line.find(op); pos != std::string_view::npos;
           pos = line.find(op, pos + op.size()))
        decisions += 1;
  }
  return 1.0 + decisions;
}

void MetricCounts::validate() const {
  if (n_all < 1 || n_fixed < 0 || n_fixed > n_attp || n_attp > n_all)
    throw ConfigError("metric counts must satisfy 0 <= fixed <= attempted <= all, all >= 1");
}

FixRatios fix_ratios(const MetricCounts& counts) {
  counts.validate();
  const auto all = static_cast<double>(counts.n_all);
  return {static_cast<double>(counts.n_fixed) / all, static_cast<double>(counts.n_attp) / all};
}

bool is_hit(std::span<const LineNo> flagged, const std::set<LineNo>& buggy_lines) {
  return std::any_of(flagged.begin(), flagged.end(),
                     [&](LineNo l) { return buggy_lines.contains(l); });
}

std::vector<ExecutionRecord> sample_records(std::span<const ExecutionRecord> records,
                                            std::optional<std::int64_t> budget,
                                            std::uint64_t seed) {
  const auto n = records.size();
  if (!budget || static_cast<std::size_t>(*budget) >= n)
    return {records.begin(), records.end()};
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  Rng rng(seed);
  const auto k = static_cast<std::size_t>(*budget);
  for (std::size_t i = 0; i < k; ++i) std::swap(idx[i], idx[i + rng.below(n - i)]);
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  std::vector<ExecutionRecord> out;
  out.reserve(k);
  for (auto i : idx) out.push_back(records[i]);
  return out;
}

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string budget_name(const std::optional<std::int64_t>& b) {
  return b ? std::to_string(*b) : "all";
}

}  // namespace

std::vector<BudgetSummary> summarize(std::span<const PairResult> pairs,
                                     std::span<const std::optional<std::int64_t>> budgets) {
  std::vector<BudgetSummary> out;
  for (std::size_t b = 0; b < budgets.size(); ++b) {
    BudgetSummary s;
    s.budget = budgets[b];
    double sum = 0.0;
    std::int64_t hits = 0;
    for (const auto& p : pairs) {
      if (b >= p.arms.size() || !p.arms[b].ok) continue;
      ++s.pairs_evaluated;
      sum += p.arms[b].r_reduc;
      hits += p.arms[b].hit ? 1 : 0;
    }
    if (s.pairs_evaluated > 0) {
      s.mean_r_reduc = sum / static_cast<double>(s.pairs_evaluated);
      s.hit_rate = static_cast<double>(hits) / static_cast<double>(s.pairs_evaluated);
    }
    out.push_back(s);
  }
  return out;
}

CorpusSummary evaluate_corpus(std::span<const BenchPair> pairs, const BenchConfig& cfg) {
  const ProfileRegistry builtin;
  const ProfileRegistry& profiles = cfg.profiles ? *cfg.profiles : builtin;
  CorpusSummary summary;

  for (const auto& bp : pairs) {
    PairResult result;
    result.pair_id = bp.pair.pair_id;
    try {
      const auto& profile = profiles.get(bp.pair.language_profile_id);
      if (bp.complexity) {
        result.complexity = complexity_score(*bp.complexity);
      }

      auto fuzz_cfg = cfg.fuzz;
      fuzz_cfg.workers = cfg.workers;
      const auto corpus = fuzz_campaign(bp.pair, bp.seeds, fuzz_cfg);
      result.coverage_fraction = corpus.coverage_fraction();
      result.generated = corpus.generated_count;
      result.rejected = corpus.rejected_count;

      const auto records = run_batch(bp.pair, corpus.cases, std::nullopt, cfg.workers);
      result.executed = static_cast<std::int64_t>(records.size());
      const auto classes = classify_lines(bp.pair.translated_text, profile);

      for (const auto& budget : cfg.budgets) {
        ArmResult arm;
        arm.budget = budget;
        const auto seed = cfg.fuzz.rng_seed ^ fnv1a(bp.pair.pair_id) ^
                          static_cast<std::uint64_t>(budget.value_or(-1));
        try {
          const auto report =
              localize(sample_records(records, budget, seed), classes, bp.pair, cfg.scoring);
          arm.ok = true;
          arm.r_reduc = report.r_reduc;
          arm.mode = report.mode;
          arm.records_used = report.records_used;
          for (const auto& f : report.flagged) arm.flagged.push_back(f.line_no);
          std::sort(arm.flagged.begin(), arm.flagged.end());
          arm.hit = is_hit(arm.flagged, bp.truth.buggy_lines);
        } catch (const Error& e) {
          arm.error = e.what();
        }
        result.arms.push_back(std::move(arm));
      }
      result.ok = true;
    } catch (const Error& e) {
      result.error = e.what();
      spdlog::warn("pair {} failed: {}", result.pair_id, e.what());
    }
    summary.pairs.push_back(std::move(result));
  }
  summary.budgets = summarize(summary.pairs, cfg.budgets);
  return summary;
}

std::string summary_to_json(const CorpusSummary& summary) {
  using nlohmann::json;
  json j;
  j["pairs"] = json::array();
  for (const auto& p : summary.pairs) {
    json pj{{"pair_id", p.pair_id}, {"ok", p.ok}};
    if (!p.ok) pj["error"] = p.error;
    pj["coverage_fraction"] = p.coverage_fraction;
    pj["generated"] = p.generated;
    pj["rejected"] = p.rejected;
    pj["executed"] = p.executed;
    if (p.complexity) {
      pj["complexity_score"] = p.complexity->score;
      pj["complexity_level"] = std::string(to_string(p.complexity->level));
    }
    pj["arms"] = json::array();
    for (const auto& a : p.arms) {
      json aj{{"budget", budget_name(a.budget)}, {"ok", a.ok}};
      if (a.ok) {
        aj["r_reduc"] = a.r_reduc;
        aj["hit"] = a.hit;
        aj["mode"] = std::string(to_string(a.mode));
        aj["records_used"] = a.records_used;
        aj["flagged"] = a.flagged;
      } else {
        aj["error"] = a.error;
      }
      pj["arms"].push_back(std::move(aj));
    }
    j["pairs"].push_back(std::move(pj));
  }
  j["budgets"] = json::array();
  for (const auto& b : summary.budgets) {
    j["budgets"].push_back({{"budget", budget_name(b.budget)},
                            {"pairs_evaluated", b.pairs_evaluated},
                            {"mean_r_reduc", b.mean_r_reduc},
                            {"hit_rate", b.hit_rate}});
  }
  return j.dump(2) + "\n";
}

std::string summary_to_text(const CorpusSummary& summary) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(3);
  out << std::left << std::setw(28) << "pair" << std::right << std::setw(8) << "cov"
      << std::setw(8) << "cases";
  for (const auto& b : summary.budgets)
    out << std::setw(12) << ("r@" + budget_name(b.budget)) << std::setw(7) << "hit";
  out << "\n";
  for (const auto& p : summary.pairs) {
    out << std::left << std::setw(28) << p.pair_id << std::right;
    if (!p.ok) {
      out << "  error: " << p.error << "\n";
      continue;
    }
    out << std::setw(8) << p.coverage_fraction << std::setw(8) << p.executed;
    for (const auto& a : p.arms) {
      if (a.ok)
        out << std::setw(12) << a.r_reduc << std::setw(7) << (a.hit ? "yes" : "no");
      else
        out << std::setw(12) << "-" << std::setw(7) << "-";
    }
    out << "\n";
  }
  out << "\n";
  for (const auto& b : summary.budgets) {
    out << "budget " << std::setw(4) << budget_name(b.budget) << ": pairs " << b.pairs_evaluated
        << ", mean r_reduc " << b.mean_r_reduc << ", hit rate " << b.hit_rate << "\n";
  }
  return out.str();
}

}  // namespace thinter
