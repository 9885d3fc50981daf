#include "thinter/localizer.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <sstream>

#include "thinter/runner.hpp"

namespace thinter {

void ScoringConfig::validate() const {
  if (!(base_score >= 0)) throw ConfigError("scoring.base_score must be >= 0");
  if (!(theta_low > 0)) throw ConfigError("scoring.theta_low must be > 0");
  if (!(theta_h1 > theta_h2 && theta_h2 > theta_low))
    throw ConfigError("scoring: need theta_h1 > theta_h2 > theta_low");
  if (!(alpha_base >= 0 && alpha_cf >= 0))
    throw ConfigError("scoring.alpha_base and alpha_cf must be >= 0");
  if (!(alpha_simple > 0 && alpha_simple <= 1 && alpha_hdr >= 1))
    throw ConfigError("scoring: need 0 < alpha_simple <= 1 <= alpha_hdr");
  if (!(flag_threshold > 0)) throw ConfigError("scoring.flag_threshold must be > 0");
  if (!(anomaly_sigma > 0)) throw ConfigError("scoring.anomaly_sigma must be > 0");
}

std::string_view to_string(FlagMode m) {
  switch (m) {
    case FlagMode::kThreshold:
      return "threshold";
    case FlagMode::kAnomaly:
      return "anomaly";
    case FlagMode::kNone:
      return "none";
  }
  return "none";
}

double score_statistics(std::int64_t cf, std::int64_t cp, const ScoringConfig& cfg) {
  if (cf == 0 || cf + cp == 0) return cfg.base_score;
  const double p = static_cast<double>(cf) / static_cast<double>(cf + cp);
  double theta = cfg.theta_low;
  if (cp == 0)
    theta = cfg.theta_h1;
  else if (p > 0.5)
    theta = cfg.theta_h2;
  return cfg.base_score + p * theta;
}

double score_expertise(LabelSet labels, const ScoringConfig& cfg) {
  if (labels.contains(LineLabel::kIgnorable)) return 0.0;
  double s = cfg.alpha_base;
  if (labels.contains(LineLabel::kControlFlow)) s += cfg.alpha_cf;
  if (labels.contains(LineLabel::kScopeHeader)) s *= cfg.alpha_hdr;
  if (labels.contains(LineLabel::kSimple)) s *= cfg.alpha_simple;
  return s;
}

double compute_r_reduc(std::int64_t flagged_count, std::int64_t line_count) {
  if (line_count <= 0 || flagged_count < 0 || flagged_count > line_count)
    throw Error("r_reduc: need 0 <= flagged <= lines and lines > 0");
  return 1.0 - static_cast<double>(flagged_count) / static_cast<double>(line_count);
}

Spectrum count_spectrum_serial(std::span<const ExecutionRecord> records, int line_count) {
  Spectrum s{std::vector<std::int64_t>(line_count, 0),
             std::vector<std::int64_t>(line_count, 0)};
  for (const auto& r : records) {
    if (r.verdict == Verdict::kExcluded) continue;
    auto& counts = r.verdict == Verdict::kFail ? s.cf : s.cp;
    for (LineNo line : r.covered_lines)
      if (line >= 1 && line <= line_count) ++counts[line - 1];
  }
  return s;
}

Spectrum count_spectrum_parallel(std::span<const ExecutionRecord> records, int line_count) {
  Spectrum s{std::vector<std::int64_t>(line_count, 0),
             std::vector<std::int64_t>(line_count, 0)};
  std::int64_t* cf = s.cf.data();
  std::int64_t* cp = s.cp.data();
  const auto n = static_cast<std::int64_t>(records.size());
  if (line_count == 0) return s;
#pragma omp parallel for schedule(static) reduction(+ : cf[:line_count], cp[:line_count])
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& r = records[i];
    if (r.verdict == Verdict::kExcluded) continue;
    std::int64_t* counts = r.verdict == Verdict::kFail ? cf : cp;
    for (LineNo line : r.covered_lines)
      if (line >= 1 && line <= line_count) ++counts[line - 1];
  }
  return s;
}

namespace {

LineScore score_one(const Spectrum& spectrum, const LineClassification& c,
                    const ScoringConfig& cfg) {
  LineScore ls;
  ls.line_no = c.line_no;
  ls.labels = c.labels;
  const auto idx = static_cast<std::size_t>(c.line_no - 1);
  ls.cf = spectrum.cf[idx];
  ls.cp = spectrum.cp[idx];
  if (!c.labels.contains(LineLabel::kIgnorable)) {
    ls.stat_score = score_statistics(ls.cf, ls.cp, cfg);
    ls.exp_score = score_expertise(c.labels, cfg);
  }
  ls.overall = ls.stat_score + ls.exp_score;
  return ls;
}

void check_shapes(const Spectrum& spectrum, std::span<const LineClassification> classes) {
  if (spectrum.cf.size() != classes.size() || spectrum.cp.size() != classes.size())
    throw Error("spectrum and classification sizes differ");
}

}  // namespace

std::vector<LineScore> score_lines_serial(const Spectrum& spectrum,
                                          std::span<const LineClassification> classes,
                                          const ScoringConfig& cfg) {
  check_shapes(spectrum, classes);
  std::vector<LineScore> out;
  out.reserve(classes.size());
  for (const auto& c : classes) out.push_back(score_one(spectrum, c, cfg));
  return out;
}

std::vector<LineScore> score_lines_parallel(const Spectrum& spectrum,
                                            std::span<const LineClassification> classes,
                                            const ScoringConfig& cfg) {
  check_shapes(spectrum, classes);
  std::vector<LineScore> out(classes.size());
  const auto n = static_cast<std::int64_t>(classes.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) out[i] = score_one(spectrum, classes[i], cfg);
  return out;
}

FlagResult select_flagged(std::span<const LineScore> scores, const ScoringConfig& cfg) {
  FlagResult result;
  for (const auto& s : scores)
    if (s.overall >= cfg.flag_threshold)
      result.flagged.push_back({s.line_no, s.overall, s.labels});
  if (!result.flagged.empty()) {
    result.mode = FlagMode::kThreshold;
  } else {
    std::vector<const LineScore*> pool;
    for (const auto& s : scores)
      if (!s.labels.contains(LineLabel::kIgnorable)) pool.push_back(&s);
    if (!pool.empty()) {
      double sum = 0.0;
      for (const auto* s : pool) sum += s->overall;
      const double mean = sum / static_cast<double>(pool.size());
      double sq = 0.0;
      for (const auto* s : pool) sq += (s->overall - mean) * (s->overall - mean);
      const double sigma = std::sqrt(sq / static_cast<double>(pool.size()));
      if (sigma > 0.0) {
        const double cutoff = mean + cfg.anomaly_sigma * sigma;
        for (const auto* s : pool)
          if (s->overall >= cutoff) result.flagged.push_back({s->line_no, s->overall, s->labels});
      }
    }
    result.mode = result.flagged.empty() ? FlagMode::kNone : FlagMode::kAnomaly;
  }
  std::sort(result.flagged.begin(), result.flagged.end(), [](const auto& a, const auto& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.line_no < b.line_no;
  });
  return result;
}

SuggestionReport localize(std::vector<ExecutionRecord> records,
                          std::span<const LineClassification> classes,
                          const CodePair& pair, const ScoringConfig& cfg) {
  const int line_count = pair.translated_line_count();
  if (static_cast<int>(classes.size()) != line_count)
    throw Error("classification does not match the translated program");
  std::erase_if(records, [](const auto& r) { return r.verdict == Verdict::kExcluded; });
  if (records.empty()) throw NoUsableRecords();
  sort_by_case_id(records);

  SuggestionReport report;
  report.pair_id = pair.pair_id;
  report.records_used = static_cast<std::int64_t>(records.size());
  const auto spectrum = count_spectrum_parallel(records, line_count);
  report.scores = score_lines_parallel(spectrum, classes, cfg);
  auto flags = select_flagged(report.scores, cfg);
  report.flagged = std::move(flags.flagged);
  report.mode = flags.mode;
  report.r_reduc =
      compute_r_reduc(static_cast<std::int64_t>(report.flagged.size()), line_count);
  return report;
}

std::string report_to_json(const SuggestionReport& report, const CodePair& pair) {
  nlohmann::json j;
  j["pair_id"] = report.pair_id;
  j["mode"] = std::string(to_string(report.mode));
  j["records_used"] = report.records_used;
  j["r_reduc"] = report.r_reduc;
  j["flagged"] = nlohmann::json::array();
  for (const auto& f : report.flagged) {
    j["flagged"].push_back({{"line", f.line_no},
                            {"score", f.score},
                            {"labels", f.labels.names()},
                            {"text", pair.translated_text.at(f.line_no - 1)}});
  }
  return j.dump(2) + "\n";
}

std::string report_to_text(const SuggestionReport& report, const CodePair& pair) {
  std::ostringstream out;
  out << "pair: " << report.pair_id << "\n";
  out << "records used: " << report.records_used << "\n";
  out << "mode: " << to_string(report.mode) << "\n";
  out << "lines: " << pair.translated_line_count() << ", flagged: " << report.flagged.size()
      << ", r_reduc: " << std::fixed << std::setprecision(3) << report.r_reduc << "\n";
  if (report.flagged.empty()) {
    out << "no suspicious lines (likely correctly translated)\n";
    return out.str();
  }
  out << "suspicious lines (highest first):\n";
  for (const auto& f : report.flagged) {
    std::string labels;
    for (const auto& name : f.labels.names()) labels += (labels.empty() ? "" : ",") + name;
    out << std::setw(6) << f.line_no << "  [" << std::setprecision(3) << f.score << "] "
        << pair.translated_text.at(f.line_no - 1) << "    (" << labels << ")\n";
  }
  return out.str();
}

}  // namespace thinter
