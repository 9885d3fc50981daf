#include "thinter/model.hpp"

#include <algorithm>

namespace thinter {

std::string_view to_string(Normalization n) {
  switch (n) {
    case Normalization::kExact:
      return "exact";
    case Normalization::kTrimTrailingWhitespace:
      return "trim_trailing_whitespace";
  }
  return "exact";
}

Normalization parse_normalization(std::string_view s) {
  if (s == "exact") return Normalization::kExact;
  if (s == "trim_trailing_whitespace" || s == "trim")
    return Normalization::kTrimTrailingWhitespace;
  throw ConfigError("unknown normalization '" + std::string(s) + "'");
}

void RunnerProfile::validate() const {
  const auto first = run_command_template.find("{input}");
  if (run_command_template.empty() || first == std::string::npos ||
      run_command_template.find("{input}", first + 1) != std::string::npos) {
    throw ConfigError("run command must contain {input} exactly once: '" +
                      run_command_template + "'");
  }
  if (!(timeout_s > 0)) throw ConfigError("runner timeout must be positive");
}

void CodePair::validate() const {
  if (translated_text.empty())
    throw ConfigError("pair '" + pair_id + "': translated program is empty");
  source_runner.validate();
  translated_runner.validate();
}

std::string_view to_string(Origin o) {
  return o == Origin::kSeed ? "seed" : "mutant";
}

Origin parse_origin(std::string_view s) {
  if (s == "seed") return Origin::kSeed;
  if (s == "mutant") return Origin::kMutant;
  throw ConfigError("unknown origin '" + std::string(s) + "'");
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass:
      return "Pass";
    case Verdict::kFail:
      return "Fail";
    case Verdict::kExcluded:
      return "Excluded";
  }
  return "Excluded";
}

Verdict parse_verdict(std::string_view s) {
  if (s == "Pass") return Verdict::kPass;
  if (s == "Fail") return Verdict::kFail;
  if (s == "Excluded") return Verdict::kExcluded;
  throw ConfigError("unknown verdict '" + std::string(s) + "'");
}

std::string_view to_string(ExclusionReason r) {
  switch (r) {
    case ExclusionReason::kSourceCrash:
      return "source_crash";
    case ExclusionReason::kBothTimeout:
      return "both_timeout";
    case ExclusionReason::kSourceTimeout:
      return "source_timeout";
  }
  return "source_crash";
}

ExclusionReason parse_exclusion_reason(std::string_view s) {
  if (s == "source_crash") return ExclusionReason::kSourceCrash;
  if (s == "both_timeout") return ExclusionReason::kBothTimeout;
  if (s == "source_timeout") return ExclusionReason::kSourceTimeout;
  throw ConfigError("unknown exclusion reason '" + std::string(s) + "'");
}

Bytes normalize_output(std::string_view raw, Normalization normalization) {
  if (normalization == Normalization::kExact) return Bytes(raw);

  Bytes out;
  out.reserve(raw.size());
  std::size_t pos = 0;
  while (pos <= raw.size()) {
    const auto nl = raw.find('\n', pos);
    auto line = raw.substr(pos, nl == std::string_view::npos ? raw.size() - pos
                                                             : nl - pos);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t'))
      line.remove_suffix(1);
    out.append(line);
    if (nl == std::string_view::npos) break;
    out.push_back('\n');
    pos = nl + 1;
  }
  while (!out.empty() && out.back() == '\n') out.pop_back();
  return out;
}

Verdict oracle_verdict(std::string_view source_output,
                       std::string_view translated_output,
                       Normalization normalization) {
  return normalize_output(source_output, normalization) ==
                 normalize_output(translated_output, normalization)
             ? Verdict::kPass
             : Verdict::kFail;
}

}  // namespace thinter
