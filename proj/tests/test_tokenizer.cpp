#include <doctest/doctest.h>

#include <string>

#include "core/error.hpp"
#include "core/tokenizer.hpp"
#include "support/tempdir.hpp"

using namespace codeocr;

TEST_CASE("builtin token rule fixtures") {
  const Tokenizer t = Tokenizer::builtin();
  // def | ' ' | f | ( | x | ) | :
  CHECK(t.count("def f(x):") == 7);
  CHECK(t.count("") == 0);
  CHECK(t.count("x") == 1);
  CHECK(t.count("   ") == 1);        // one whitespace run
  CHECK(t.count("a  b") == 3);
  CHECK(t.count("3.14") == 1);       // number with fraction
  CHECK(t.count("3.") == 2);         // dot without digits stays separate
  CHECK(t.count("x+=1") == 4);       // x | + | = | 1
  CHECK(t.count("foo_bar9") == 1);
  CHECK(t.count("9lives") == 2);     // number then identifier
  CHECK(t.count("a\n\n  b") == 3);
}

TEST_CASE("builtin tokens cover the text exactly") {
  const Tokenizer t = Tokenizer::builtin();
  const std::string src = "def f(x):\n    return x + 1\n";
  const auto tokens = t.tokenize(src);
  std::size_t cursor = 0;
  for (const auto& tok : tokens) {
    CHECK(tok.start == cursor);
    CHECK(tok.end > tok.start);
    cursor = tok.end;
  }
  CHECK(cursor == src.size());
}

TEST_CASE("whitespace flag marks only whitespace runs") {
  const Tokenizer t = Tokenizer::builtin();
  const auto tokens = t.tokenize("a \t b");
  REQUIRE(tokens.size() == 3);
  CHECK_FALSE(tokens[0].whitespace);
  CHECK(tokens[1].whitespace);
  CHECK_FALSE(tokens[2].whitespace);

  const auto views = t.token_views("a \t b", false);
  REQUIRE(views.size() == 2);
  CHECK(views[0] == "a");
  CHECK(views[1] == "b");
}

TEST_CASE("multibyte codepoints are one token each") {
  const Tokenizer t = Tokenizer::builtin();
  // Two CJK codepoints: neither is an identifier char.
  CHECK(t.count("\xe4\xb8\xad\xe6\x96\x87") == 2);
}

TEST_CASE("external vocab takes the longest match") {
  testsupport::TempDir dir;
  testsupport::write_text_file(dir.file("vocab.txt"), "in\nint\nreturn\n \nr\n");
  const Tokenizer t = Tokenizer::external_vocab(dir.file("vocab.txt").string());
  // "int" wins over "in"; unknown bytes fall back to singles.
  const auto views = t.token_views("int return zz", true);
  REQUIRE(views.size() >= 5);
  CHECK(views[0] == "int");
  CHECK(views[1] == " ");
  CHECK(views[2] == "return");
  CHECK(t.count("zz") == 2);  // two byte fallbacks
}

TEST_CASE("external vocab never yields zero tokens for nonempty text") {
  testsupport::TempDir dir;
  testsupport::write_text_file(dir.file("v.txt"), "abc\n");
  const Tokenizer t = Tokenizer::external_vocab(dir.file("v.txt").string());
  CHECK(t.count("xyz") == 3);
  CHECK(t.count("abc") == 1);
  CHECK(t.count("") == 0);
}

TEST_CASE("external vocab whitespace classification") {
  testsupport::TempDir dir;
  testsupport::write_text_file(dir.file("v.txt"), "  \nab\n");
  const Tokenizer t = Tokenizer::external_vocab(dir.file("v.txt").string());
  const auto tokens = t.tokenize("  ab");
  REQUIRE(tokens.size() == 2);
  CHECK(tokens[0].whitespace);
  CHECK_FALSE(tokens[1].whitespace);
}

TEST_CASE("missing vocab file is a config error") {
  CHECK_THROWS_AS(Tokenizer::external_vocab("/no/such/vocab.txt"), Error);
}

TEST_CASE("from_spec dispatches on kind") {
  TokenizerSpec spec;
  CHECK(Tokenizer::from_spec(spec).description() == "builtin-v1");
  testsupport::TempDir dir;
  testsupport::write_text_file(dir.file("v.txt"), "q\n");
  spec.kind = TokenizerKind::ExternalVocab;
  spec.vocab_path = dir.file("v.txt").string();
  CHECK(Tokenizer::from_spec(spec).description() != "builtin-v1");
}
