#include "core/tokenizer.hpp"

#include <algorithm>

#include "core/error.hpp"
#include "core/text.hpp"

namespace codeocr {

namespace {

bool ascii_ident_start(char32_t c) {
  return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z') || c == U'_';
}

bool ascii_ident_continue(char32_t c) {
  return ascii_ident_start(c) || (c >= U'0' && c <= U'9');
}

bool ascii_digit(char32_t c) { return c >= U'0' && c <= U'9'; }

bool all_whitespace(std::string_view s) {
  for (char c : s) {
    if (!(c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f')) {
      return false;
    }
  }
  return true;
}

}  // namespace

Tokenizer Tokenizer::builtin() { return Tokenizer(); }

Tokenizer Tokenizer::external_vocab(const std::string& path) {
  std::string content;
  try {
    content = read_file(path);
  } catch (const Error&) {
    fail(ErrorCode::Config, "tokenizer: cannot read vocabulary: " + path);
  }

  auto vocab = std::make_shared<std::vector<std::vector<std::string>>>(256);
  std::size_t total = 0;
  for (std::string_view line : split_lines(content)) {
    if (line.empty()) continue;
    (*vocab)[static_cast<unsigned char>(line[0])].emplace_back(line);
    ++total;
  }
  require(total > 0, ErrorCode::Config, "tokenizer: empty vocabulary: " + path);
  for (auto& bucket : *vocab) {
    std::sort(bucket.begin(), bucket.end(), [](const auto& a, const auto& b) {
      return a.size() != b.size() ? a.size() > b.size() : a < b;
    });
    bucket.erase(std::unique(bucket.begin(), bucket.end()), bucket.end());
  }

  Tokenizer t;
  t.kind_ = TokenizerKind::ExternalVocab;
  t.description_ = "vocab:" + path;
  t.vocab_ = std::move(vocab);
  return t;
}

Tokenizer Tokenizer::from_spec(const TokenizerSpec& spec) {
  if (spec.kind == TokenizerKind::Builtin) return builtin();
  return external_vocab(spec.vocab_path);
}

std::vector<TextToken> Tokenizer::tokenize(std::string_view text) const {
  std::vector<TextToken> out;

  if (kind_ == TokenizerKind::ExternalVocab) {
    std::size_t i = 0;
    while (i < text.size()) {
      std::size_t len = 1;
      for (const std::string& entry : (*vocab_)[static_cast<unsigned char>(text[i])]) {
        if (text.substr(i, entry.size()) == entry) {
          len = entry.size();
          break;
        }
      }
      out.push_back({i, i + len, all_whitespace(text.substr(i, len))});
      i += len;
    }
    return out;
  }

  std::vector<char32_t> cps;
  std::vector<std::size_t> offsets;
  decode_utf8(text, cps, offsets);

  std::size_t i = 0;
  const std::size_t n = cps.size();
  while (i < n) {
    const std::size_t start = i;
    if (is_space_cp(cps[i])) {
      while (i < n && is_space_cp(cps[i])) ++i;
      out.push_back({offsets[start], offsets[i], true});
    } else if (ascii_ident_start(cps[i])) {
      while (i < n && ascii_ident_continue(cps[i])) ++i;
      out.push_back({offsets[start], offsets[i], false});
    } else if (ascii_digit(cps[i])) {
      while (i < n && ascii_digit(cps[i])) ++i;
      if (i + 1 < n && cps[i] == U'.' && ascii_digit(cps[i + 1])) {
        ++i;
        while (i < n && ascii_digit(cps[i])) ++i;
      }
      out.push_back({offsets[start], offsets[i], false});
    } else {
      ++i;
      out.push_back({offsets[start], offsets[i], false});
    }
  }
  return out;
}

std::uint64_t Tokenizer::count(std::string_view text) const {
  return tokenize(text).size();
}

std::vector<std::string_view> Tokenizer::token_views(std::string_view text,
                                                     bool keep_whitespace) const {
  std::vector<std::string_view> out;
  for (const TextToken& t : tokenize(text)) {
    if (!keep_whitespace && t.whitespace) continue;
    out.push_back(text.substr(t.start, t.end - t.start));
  }
  return out;
}

}  // namespace codeocr
