#include <doctest/doctest.h>

#include <random>
#include <string>

#include "core/assets.hpp"
#include "core/error.hpp"
#include "core/lexer.hpp"

using namespace codeocr;

namespace {

const LanguageProfile& python() {
  return *LanguageRegistry::builtin().by_name("python");
}

// Category of the span covering byte `pos`.
TokenCategory category_at(const std::vector<LexSpan>& spans, std::size_t pos) {
  for (const auto& s : spans) {
    if (pos >= s.start && pos < s.end) return s.category;
  }
  FAIL("no span covers position ", pos);
  return TokenCategory::Default;
}

void check_partition(const std::vector<LexSpan>& spans, std::size_t size) {
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    CHECK(spans[i].start == cursor);
    CHECK(spans[i].end > spans[i].start);
    if (i > 0) CHECK(spans[i].category != spans[i - 1].category);
    cursor = spans[i].end;
  }
  CHECK(cursor == size);
}

}  // namespace

TEST_CASE("python keywords and identifiers split correctly") {
  const std::string src = "def foo(bar):";
  const auto spans = lex(src, python());
  check_partition(spans, src.size());
  CHECK(category_at(spans, 0) == TokenCategory::Keyword);      // def
  CHECK(category_at(spans, 4) == TokenCategory::Identifier);   // foo
  CHECK(category_at(spans, 7) == TokenCategory::Punctuation);  // (
  CHECK(category_at(spans, 8) == TokenCategory::Identifier);   // bar
  CHECK(category_at(spans, 12) == TokenCategory::Operator);    // :
}

TEST_CASE("python strings comments and numbers") {
  const std::string src = "x = 'hi' # note 3.14\ny = 3.14";
  const auto spans = lex(src, python());
  check_partition(spans, src.size());
  CHECK(category_at(spans, 0) == TokenCategory::Identifier);
  CHECK(category_at(spans, 2) == TokenCategory::Operator);   // =
  CHECK(category_at(spans, 4) == TokenCategory::String);     // 'hi'
  CHECK(category_at(spans, 9) == TokenCategory::Comment);    // runs to newline
  CHECK(category_at(spans, 19) == TokenCategory::Comment);
  CHECK(category_at(spans, 25) == TokenCategory::Number);    // 3.14 on line 2
}

TEST_CASE("string escapes do not terminate the literal") {
  const std::string src = R"(s = "a\"b")";
  const auto spans = lex(src, python());
  CHECK(category_at(spans, 5) == TokenCategory::String);
  CHECK(category_at(spans, 9) == TokenCategory::String);  // closing quote
}

TEST_CASE("unterminated string stops at end of line") {
  const std::string src = "s = \"open\nnext = 1";
  const auto spans = lex(src, python());
  check_partition(spans, src.size());
  CHECK(category_at(spans, 4) == TokenCategory::String);
  CHECK(category_at(spans, 8) == TokenCategory::String);
  // The next line lexes normally.
  CHECK(category_at(spans, 10) == TokenCategory::Identifier);
  CHECK(category_at(spans, 17) == TokenCategory::Number);
}

TEST_CASE("python triple-quoted strings span lines") {
  const std::string src = "s = \"\"\"a\nb\"\"\"\nz = 1";
  const auto spans = lex(src, python());
  check_partition(spans, src.size());
  CHECK(category_at(spans, 7) == TokenCategory::String);   // a
  CHECK(category_at(spans, 9) == TokenCategory::String);   // b
  CHECK(category_at(spans, 14) == TokenCategory::Identifier);  // z
}

TEST_CASE("c block comments run to the closing marker or input end") {
  const auto& c = *LanguageRegistry::builtin().by_name("c");
  const std::string closed = "a /* x\ny */ b";
  auto spans = lex(closed, c);
  check_partition(spans, closed.size());
  CHECK(category_at(spans, 3) == TokenCategory::Comment);
  CHECK(category_at(spans, 7) == TokenCategory::Comment);
  CHECK(category_at(spans, 12) == TokenCategory::Identifier);

  const std::string open = "a /* never closed";
  spans = lex(open, c);
  check_partition(spans, open.size());
  CHECK(category_at(spans, open.size() - 1) == TokenCategory::Comment);
}

TEST_CASE("go backtick strings are raw") {
  const auto& go = *LanguageRegistry::builtin().by_name("go");
  const std::string src = "s := `a\\` + x";
  const auto spans = lex(src, go);
  check_partition(spans, src.size());
  // The backslash does not escape the closing backtick.
  CHECK(category_at(spans, 6) == TokenCategory::String);
  CHECK(category_at(spans, 12) == TokenCategory::Identifier);
}

TEST_CASE("whitespace runs form single spans") {
  const std::string src = "a   \t b";
  const auto spans = lex(src, python());
  check_partition(spans, src.size());
  CHECK(category_at(spans, 1) == TokenCategory::Whitespace);
  CHECK(category_at(spans, 5) == TokenCategory::Whitespace);
  // One span covers the whole run.
  int ws_spans = 0;
  for (const auto& s : spans) {
    if (s.category == TokenCategory::Whitespace) ++ws_spans;
  }
  CHECK(ws_spans == 1);
}

TEST_CASE("lex covers arbitrary bytes without gaps") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 50; ++round) {
    std::string src;
    const int len = static_cast<int>(rng() % 120);
    for (int i = 0; i < len; ++i) src.push_back(static_cast<char>(rng() % 256));
    const auto spans = lex(src, python());
    check_partition(spans, src.size());
  }
}

TEST_CASE("every bundled profile parses and lexes its own keywords") {
  const auto& registry = LanguageRegistry::builtin();
  CHECK(registry.profiles().size() == 7);
  for (const auto& profile : registry.profiles()) {
    CHECK_FALSE(profile.keywords.empty());
    CHECK_FALSE(profile.extensions.empty());
    const std::string kw = profile.keywords.front();
    const auto spans = lex(kw, profile);
    REQUIRE(spans.size() == 1);
    CHECK(spans[0].category == TokenCategory::Keyword);
  }
}

TEST_CASE("extension lookup is case-insensitive and detect falls back") {
  const auto& registry = LanguageRegistry::builtin();
  REQUIRE(registry.by_extension(".py") != nullptr);
  CHECK(registry.by_extension(".PY") == registry.by_extension(".py"));
  CHECK(registry.by_extension(".nope") == nullptr);
  CHECK(registry.detect("dir/file.py") == "python");
  CHECK(registry.detect("file.TS") == "typescript");
  CHECK(registry.detect("Makefile") == "plain-text");
  CHECK(registry.detect("dir.with.dots/file") == "plain-text");
  CHECK(registry.detect("a/b.cc") == "cpp");
}

TEST_CASE("profile json validation rejects nonsense") {
  CHECK_THROWS_AS(LanguageProfile::from_json("not json"), Error);
  CHECK_THROWS_AS(LanguageProfile::from_json("{}"), Error);
  // Missing extensions.
  CHECK_THROWS_AS(LanguageProfile::from_json(R"({"name":"x","keywords":["if"]})"), Error);
}
