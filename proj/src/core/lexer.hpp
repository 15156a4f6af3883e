#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace codeocr {

enum class TokenCategory {
  Keyword,
  Identifier,
  Number,
  String,
  Comment,
  Operator,
  Punctuation,
  Whitespace,
  Default,
};

std::string_view category_name(TokenCategory c);

// Byte range [start, end) with a highlight category.
struct LexSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  TokenCategory category = TokenCategory::Default;
};

// Declarative description of a language, loadable from JSON. The scanner is
// shared; profiles only supply keywords and delimiter syntax.
struct LanguageProfile {
  std::string name;
  std::vector<std::string> extensions;  // ".py", ".cc", ...
  std::vector<std::string> keywords;
  std::string line_comment;           // empty when the language has none
  std::string block_comment_open;
  std::string block_comment_close;
  std::string string_delimiters;      // one char per delimiter
  bool triple_quoted_strings = false;
  char string_escape = '\\';

  static LanguageProfile from_json(std::string_view json_text);
};

// Spans cover [0, source.size()) exactly, in order, without overlap.
// Adjacent spans never share a category. Unterminated strings highlight to
// end of line; unterminated block comments to end of input. A backtick
// delimiter is treated as raw (no escape processing).
std::vector<LexSpan> lex(std::string_view source, const LanguageProfile& profile);

class LanguageRegistry {
 public:
  // Profiles bundled into the library.
  static const LanguageRegistry& builtin();

  const LanguageProfile* by_name(std::string_view name) const;
  // `ext` includes the dot. Comparison is case-insensitive.
  const LanguageProfile* by_extension(std::string_view ext) const;
  // Profile name for a path, or "plain-text" when nothing matches.
  std::string detect(std::string_view path) const;

  const std::vector<LanguageProfile>& profiles() const { return profiles_; }

 private:
  std::vector<LanguageProfile> profiles_;
};

}  // namespace codeocr
