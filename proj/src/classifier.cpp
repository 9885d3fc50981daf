#include "thinter/classifier.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <nlohmann/json.hpp>
#include <regex>

namespace thinter {

namespace {

bool is_ident(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

std::string_view ltrim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  return s;
}

std::string_view rtrim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

int count_occurrences(std::string_view haystack, std::string_view needle) {
  if (needle.empty()) return 0;
  int n = 0;
  for (auto pos = haystack.find(needle); pos != std::string_view::npos;
       pos = haystack.find(needle, pos + needle.size()))
    ++n;
  return n;
}

bool looks_like_signature(std::string_view code) {
  static const std::regex pattern(R"([A-Za-z_][A-Za-z0-9_]*\s*\(.*\))");
  return std::regex_search(code.begin(), code.end(), pattern);
}

}  // namespace

std::string_view to_string(LineLabel l) {
  switch (l) {
    case LineLabel::kControlFlow:
      return "control_flow";
    case LineLabel::kScopeHeader:
      return "scope_header";
    case LineLabel::kScopeBody:
      return "scope_body";
    case LineLabel::kSimple:
      return "simple";
    case LineLabel::kIgnorable:
      return "ignorable";
  }
  return "ignorable";
}

std::vector<std::string> LabelSet::names() const {
  std::vector<std::string> out;
  for (auto l : {LineLabel::kControlFlow, LineLabel::kScopeHeader, LineLabel::kScopeBody,
                 LineLabel::kSimple, LineLabel::kIgnorable}) {
    if (contains(l)) out.emplace_back(to_string(l));
  }
  return out;
}

void LanguageProfile::validate() const {
  if (control_flow_keywords.empty())
    throw ConfigError("language profile '" + profile_id +
                      "' has no control-flow keywords");
  if (scope_open_token.empty() || scope_close_token.empty())
    throw ConfigError("language profile '" + profile_id + "' has empty scope tokens");
}

bool contains_word(std::string_view line, std::string_view word) {
  if (word.empty()) return false;
  for (auto pos = line.find(word); pos != std::string_view::npos;
       pos = line.find(word, pos + 1)) {
    const bool left_ok = pos == 0 || !is_ident(line[pos - 1]);
    const auto end = pos + word.size();
    const bool right_ok = end >= line.size() || !is_ident(line[end]);
    if (left_ok && right_ok) return true;
  }
  return false;
}

std::vector<LineClassification> classify_lines(std::span<const std::string> text,
                                               const LanguageProfile& profile) {
  std::vector<LineClassification> result;
  result.reserve(text.size());
  int depth = 0;

  for (std::size_t i = 0; i < text.size(); ++i) {
    LineClassification c;
    c.line_no = static_cast<LineNo>(i + 1);
    c.scope_depth = depth;

    const auto stripped = ltrim(text[i]);
    const bool comment =
        std::any_of(profile.comment_prefixes.begin(), profile.comment_prefixes.end(),
                    [&](const auto& p) { return !p.empty() && stripped.starts_with(p); });
    const bool preprocessor = profile.preprocessor_prefix &&
                              !profile.preprocessor_prefix->empty() &&
                              stripped.starts_with(*profile.preprocessor_prefix);
    if (stripped.empty() || comment || preprocessor) {
      c.labels.insert(LineLabel::kIgnorable);
      result.push_back(c);
      continue;
    }

    auto code = stripped;
    if (const auto cut = code.find("//"); cut != std::string_view::npos)
      code = code.substr(0, cut);
    code = rtrim(code);

    const bool keyword = std::any_of(
        profile.control_flow_keywords.begin(), profile.control_flow_keywords.end(),
        [&](const auto& kw) { return contains_word(code, kw); });
    const int opens = count_occurrences(code, profile.scope_open_token);
    const int closes = count_occurrences(code, profile.scope_close_token);

    if (keyword) c.labels.insert(LineLabel::kControlFlow);
    if (opens > 0 && (keyword || looks_like_signature(code)))
      c.labels.insert(LineLabel::kScopeHeader);
    if (depth > 0 && !c.labels.contains(LineLabel::kScopeHeader))
      c.labels.insert(LineLabel::kScopeBody);
    if (!keyword && opens == 0 && closes == 0 &&
        code.ends_with(profile.statement_terminator))
      c.labels.insert(LineLabel::kSimple);
    if (c.labels.empty()) {
      // Top-level line outside every rule: a bare type/namespace opener is a
      // header, anything else is treated as scope-free code.
      c.labels.insert(opens > 0 ? LineLabel::kScopeHeader : LineLabel::kSimple);
    }

    depth += opens - closes;
    if (depth < 0) {
      spdlog::warn("scope depth underflow at line {}; clamping to 0", c.line_no);
      depth = 0;
    }
    result.push_back(c);
  }
  return result;
}

ProfileRegistry::ProfileRegistry() { profiles_.emplace("cpp", LanguageProfile{}); }

void ProfileRegistry::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read language profiles " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
    for (const auto& [id, body] : doc.items()) {
      LanguageProfile p;
      p.profile_id = id;
      if (body.contains("control_flow_keywords"))
        p.control_flow_keywords = body["control_flow_keywords"].get<std::set<std::string>>();
      p.scope_open_token = body.value("scope_open_token", p.scope_open_token);
      p.scope_close_token = body.value("scope_close_token", p.scope_close_token);
      p.statement_terminator = body.value("statement_terminator", p.statement_terminator);
      if (body.contains("comment_prefixes"))
        p.comment_prefixes = body["comment_prefixes"].get<std::vector<std::string>>();
      if (body.contains("preprocessor_prefix")) {
        const auto& pp = body["preprocessor_prefix"];
        p.preprocessor_prefix =
            pp.is_null() ? std::nullopt : std::optional<std::string>(pp.get<std::string>());
      }
      p.validate();
      profiles_[id] = std::move(p);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad language profile file " + path.string() + ": " + e.what());
  }
}

const LanguageProfile& ProfileRegistry::get(const std::string& profile_id) const {
  const auto it = profiles_.find(profile_id);
  if (it == profiles_.end())
    throw ConfigError("unknown language profile '" + profile_id + "'");
  return it->second;
}

}  // namespace thinter
