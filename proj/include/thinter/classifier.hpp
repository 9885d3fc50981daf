#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "thinter/model.hpp"

namespace thinter {

/// Lexical description of the translated language.
struct LanguageProfile {
  std::string profile_id = "cpp";
  std::set<std::string> control_flow_keywords = {
      "if", "else", "for", "while", "do", "switch",
      "case", "break", "continue", "return", "goto"};
  std::string scope_open_token = "{";
  std::string scope_close_token = "}";
  std::string statement_terminator = ";";
  std::vector<std::string> comment_prefixes = {"//", "/*", "*"};
  std::optional<std::string> preprocessor_prefix = "#";

  void validate() const;
};

enum class LineLabel : std::uint8_t {
  kControlFlow = 1u << 0,
  kScopeHeader = 1u << 1,
  kScopeBody = 1u << 2,
  kSimple = 1u << 3,
  kIgnorable = 1u << 4,
};

/// Small bit set of LineLabel values.
class LabelSet {
 public:
  constexpr LabelSet() = default;
  constexpr LabelSet(std::initializer_list<LineLabel> labels) {
    for (auto l : labels) insert(l);
  }
  constexpr bool contains(LineLabel l) const {
    return (bits_ & static_cast<std::uint8_t>(l)) != 0;
  }
  constexpr void insert(LineLabel l) { bits_ |= static_cast<std::uint8_t>(l); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint8_t bits() const { return bits_; }
  friend constexpr bool operator==(LabelSet, LabelSet) = default;

  /// Label names in a fixed order.
  std::vector<std::string> names() const;

 private:
  std::uint8_t bits_ = 0;
};

std::string_view to_string(LineLabel l);

struct LineClassification {
  LineNo line_no = 0;
  LabelSet labels;
  int scope_depth = 0;  // depth before the line's own scope tokens
};

/// Single pass over the translated text. Multi-line constructs are judged by
/// their first line; braces inside string literals are not special-cased.
std::vector<LineClassification> classify_lines(std::span<const std::string> text,
                                               const LanguageProfile& profile);

/// True if `line` contains `word` delimited by non-identifier characters.
bool contains_word(std::string_view line, std::string_view word);

/// Built-in profiles ("cpp") plus any loaded from a JSON file of the form
/// {"<profile_id>": {"control_flow_keywords": [...], ...}}.
class ProfileRegistry {
 public:
  ProfileRegistry();
  void load_file(const std::filesystem::path& path);
  const LanguageProfile& get(const std::string& profile_id) const;

 private:
  std::map<std::string, LanguageProfile> profiles_;
};

}  // namespace thinter
