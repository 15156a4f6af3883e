#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace codeocr {

// Byte range of one text token. Whitespace runs are tokens too; metrics
// that want only code tokens filter on the flag.
struct TextToken {
  std::size_t start = 0;
  std::size_t end = 0;
  bool whitespace = false;
};

enum class TokenizerKind { Builtin, ExternalVocab };

struct TokenizerSpec {
  TokenizerKind kind = TokenizerKind::Builtin;
  std::string vocab_path;  // ExternalVocab only
};

// Builtin rule, applied to codepoints:
//   - a maximal run of whitespace is one token
//   - an identifier [A-Za-z_][A-Za-z0-9_]* is one token
//   - a number [0-9]+(.[0-9]+)? is one token
//   - any other single codepoint is one token
// ExternalVocab matches the longest vocabulary entry at each position and
// falls back to a single byte. Either way, nonempty text has at least one
// token, so token counts are never zero for nonempty input.
class Tokenizer {
 public:
  static Tokenizer builtin();
  // One entry per line, UTF-8. Unreadable or empty-after-filtering files are
  // a config error.
  static Tokenizer external_vocab(const std::string& path);
  static Tokenizer from_spec(const TokenizerSpec& spec);

  std::vector<TextToken> tokenize(std::string_view text) const;
  std::uint64_t count(std::string_view text) const;

  // Token strings, optionally without whitespace tokens.
  std::vector<std::string_view> token_views(std::string_view text,
                                            bool keep_whitespace) const;

  const std::string& description() const { return description_; }

 private:
  Tokenizer() = default;

  TokenizerKind kind_ = TokenizerKind::Builtin;
  std::string description_ = "builtin-v1";
  // Vocab entries grouped by first byte, longest first.
  std::shared_ptr<std::vector<std::vector<std::string>>> vocab_;
};

}  // namespace codeocr
