#include "core/lexer.hpp"

#include <algorithm>
#include <cctype>

#include <nlohmann/json.hpp>

#include "core/assets.hpp"
#include "core/error.hpp"

namespace codeocr {

namespace {

bool ident_start(unsigned char c) {
  return std::isalpha(c) || c == '_' || c >= 0x80;
}

bool ident_continue(unsigned char c) {
  return std::isalnum(c) || c == '_' || c >= 0x80;
}

bool is_ws(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

constexpr std::string_view kPunctuation = "()[]{};,.";

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::string_view category_name(TokenCategory c) {
  switch (c) {
    case TokenCategory::Keyword: return "Keyword";
    case TokenCategory::Identifier: return "Identifier";
    case TokenCategory::Number: return "Number";
    case TokenCategory::String: return "String";
    case TokenCategory::Comment: return "Comment";
    case TokenCategory::Operator: return "Operator";
    case TokenCategory::Punctuation: return "Punctuation";
    case TokenCategory::Whitespace: return "Whitespace";
    case TokenCategory::Default: return "Default";
  }
  return "Default";
}

LanguageProfile LanguageProfile::from_json(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Config, std::string("language profile: invalid JSON: ") + e.what());
  }

  LanguageProfile p;
  try {
    p.name = doc.at("name").get<std::string>();
    for (const auto& e : doc.at("extensions")) {
      p.extensions.push_back(e.get<std::string>());
    }
    for (const auto& k : doc.at("keywords")) {
      p.keywords.push_back(k.get<std::string>());
    }
    if (!doc.at("line_comment").is_null()) {
      p.line_comment = doc.at("line_comment").get<std::string>();
    }
    const auto& block = doc.at("block_comment");
    if (!block.is_null()) {
      require(block.is_array() && block.size() == 2, ErrorCode::Config,
              "language profile: block_comment must be [open, close]");
      p.block_comment_open = block[0].get<std::string>();
      p.block_comment_close = block[1].get<std::string>();
      require(!p.block_comment_open.empty() && !p.block_comment_close.empty(),
              ErrorCode::Config, "language profile: empty block comment marker");
    }
    for (const auto& d : doc.at("string_delimiters")) {
      const auto s = d.get<std::string>();
      require(s.size() == 1, ErrorCode::Config,
              "language profile: string delimiter must be a single character");
      p.string_delimiters += s;
    }
    p.triple_quoted_strings = doc.at("triple_quoted_strings").get<bool>();
    if (doc.contains("string_escape") && !doc.at("string_escape").is_null()) {
      const auto s = doc.at("string_escape").get<std::string>();
      require(s.size() == 1, ErrorCode::Config,
              "language profile: string escape must be a single character");
      p.string_escape = s[0];
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Config, std::string("language profile: ") + e.what());
  }

  require(!p.name.empty(), ErrorCode::Config, "language profile: empty name");
  for (const auto& ext : p.extensions) {
    require(ext.size() >= 2 && ext[0] == '.', ErrorCode::Config,
            "language profile: extension must start with '.'");
  }
  for (const auto& kw : p.keywords) {
    require(!kw.empty(), ErrorCode::Config, "language profile: empty keyword");
  }
  return p;
}

std::vector<LexSpan> lex(std::string_view source, const LanguageProfile& profile) {
  std::vector<LexSpan> spans;
  const auto push = [&spans](std::size_t start, std::size_t end, TokenCategory cat) {
    if (start == end) return;
    if (!spans.empty() && spans.back().category == cat && spans.back().end == start) {
      spans.back().end = end;
      return;
    }
    spans.push_back({start, end, cat});
  };

  const std::size_t n = source.size();
  std::size_t i = 0;
  const auto starts_with = [&](std::size_t at, std::string_view prefix) {
    return !prefix.empty() && source.substr(at, prefix.size()) == prefix;
  };

  while (i < n) {
    const std::size_t start = i;
    const char c = source[i];

    if (is_ws(c)) {
      while (i < n && is_ws(source[i])) ++i;
      push(start, i, TokenCategory::Whitespace);
      continue;
    }

    if (starts_with(i, profile.line_comment)) {
      while (i < n && source[i] != '\n') ++i;
      push(start, i, TokenCategory::Comment);
      continue;
    }

    if (starts_with(i, profile.block_comment_open)) {
      i += profile.block_comment_open.size();
      const std::size_t close = source.find(profile.block_comment_close, i);
      i = close == std::string_view::npos ? n : close + profile.block_comment_close.size();
      push(start, i, TokenCategory::Comment);
      continue;
    }

    if (profile.string_delimiters.find(c) != std::string::npos) {
      const bool raw = c == '`';
      const bool triple = profile.triple_quoted_strings && i + 2 < n &&
                          source[i + 1] == c && source[i + 2] == c;
      if (triple) {
        i += 3;
        const std::string closer(3, c);
        while (i < n) {
          if (!raw && source[i] == profile.string_escape && i + 1 < n) {
            i += 2;
            continue;
          }
          if (starts_with(i, closer)) {
            i += 3;
            break;
          }
          ++i;
        }
      } else {
        ++i;
        while (i < n) {
          if (!raw && source[i] == profile.string_escape && i + 1 < n) {
            i += 2;
            continue;
          }
          if (source[i] == c) {
            ++i;
            break;
          }
          if (source[i] == '\n' && !raw) break;  // unterminated: stop at line end
          ++i;
        }
      }
      push(start, i, TokenCategory::String);
      continue;
    }

    if (std::isdigit(static_cast<unsigned char>(c))) {
      ++i;
      while (i < n && ident_continue(static_cast<unsigned char>(source[i]))) ++i;
      if (i + 1 < n && source[i] == '.' &&
          std::isdigit(static_cast<unsigned char>(source[i + 1]))) {
        ++i;
        while (i < n && ident_continue(static_cast<unsigned char>(source[i]))) ++i;
      }
      push(start, i, TokenCategory::Number);
      continue;
    }

    if (ident_start(static_cast<unsigned char>(c))) {
      ++i;
      while (i < n && ident_continue(static_cast<unsigned char>(source[i]))) ++i;
      const std::string_view word = source.substr(start, i - start);
      const bool kw = std::find(profile.keywords.begin(), profile.keywords.end(),
                                word) != profile.keywords.end();
      push(start, i, kw ? TokenCategory::Keyword : TokenCategory::Identifier);
      continue;
    }

    ++i;
    if (kPunctuation.find(c) != std::string_view::npos) {
      push(start, i, TokenCategory::Punctuation);
    } else {
      push(start, i, TokenCategory::Operator);
    }
  }

  return spans;
}

const LanguageRegistry& LanguageRegistry::builtin() {
  static const LanguageRegistry reg = [] {
    LanguageRegistry r;
    for (std::string_view name : assets::language_profile_names()) {
      r.profiles_.push_back(LanguageProfile::from_json(assets::language_profile(name)));
    }
    return r;
  }();
  return reg;
}

const LanguageProfile* LanguageRegistry::by_name(std::string_view name) const {
  for (const auto& p : profiles_) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

const LanguageProfile* LanguageRegistry::by_extension(std::string_view ext) const {
  const std::string needle = lower(ext);
  for (const auto& p : profiles_) {
    for (const auto& e : p.extensions) {
      if (lower(e) == needle) return &p;
    }
  }
  return nullptr;
}

std::string LanguageRegistry::detect(std::string_view path) const {
  const std::size_t dot = path.rfind('.');
  const std::size_t sep = path.find_last_of("/\\");
  if (dot == std::string_view::npos || (sep != std::string_view::npos && dot < sep)) {
    return "plain-text";
  }
  const LanguageProfile* p = by_extension(path.substr(dot));
  return p ? p->name : "plain-text";
}

}  // namespace codeocr
