#include <doctest/doctest.h>

#include <string>
#include <vector>

#include "core/digest.hpp"
#include "core/error.hpp"
#include "core/text.hpp"

using namespace codeocr;

TEST_CASE("utf8 decode handles ascii") {
  const auto cps = decode_utf8("abc");
  REQUIRE(cps.size() == 3);
  CHECK(cps[0] == U'a');
  CHECK(cps[2] == U'c');
}

TEST_CASE("utf8 decode handles multibyte sequences") {
  // U+00E9, U+4E2D, U+1F600
  const auto cps = decode_utf8("\xc3\xa9\xe4\xb8\xad\xf0\x9f\x98\x80");
  REQUIRE(cps.size() == 3);
  CHECK(cps[0] == 0xE9);
  CHECK(cps[1] == 0x4E2D);
  CHECK(cps[2] == 0x1F600);
}

TEST_CASE("utf8 decode replaces malformed bytes one for one") {
  const auto lone_continuation = decode_utf8("a\x80z");
  REQUIRE(lone_continuation.size() == 3);
  CHECK(lone_continuation[1] == 0xFFFD);

  // Overlong encoding of '/'.
  const auto overlong = decode_utf8("\xc0\xaf");
  REQUIRE(overlong.size() == 2);
  CHECK(overlong[0] == 0xFFFD);
  CHECK(overlong[1] == 0xFFFD);

  // CESU-style surrogate half.
  const auto surrogate = decode_utf8("\xed\xa0\x80");
  for (char32_t cp : surrogate) CHECK(cp == 0xFFFD);

  // Truncated 3-byte sequence at end of input.
  const auto truncated = decode_utf8("\xe4\xb8");
  REQUIRE(truncated.size() == 2);
  CHECK(truncated[0] == 0xFFFD);
}

TEST_CASE("utf8 decode with offsets brackets every codepoint") {
  const std::string text = "a\xc3\xa9z";
  std::vector<char32_t> cps;
  std::vector<std::size_t> offsets;
  decode_utf8(text, cps, offsets);
  REQUIRE(cps.size() == 3);
  REQUIRE(offsets.size() == 4);
  CHECK(offsets[0] == 0);
  CHECK(offsets[1] == 1);
  CHECK(offsets[2] == 3);
  CHECK(offsets[3] == 4);
}

TEST_CASE("utf8 encode round-trips decode") {
  const std::string text = "int x = 42; \xc3\xa9\xe4\xb8\xad";
  CHECK(encode_utf8(decode_utf8(text)) == text);
}

TEST_CASE("split_lines handles the three terminators") {
  const auto unix_lines = split_lines("a\nb\nc");
  REQUIRE(unix_lines.size() == 3);
  CHECK(unix_lines[0] == "a");
  CHECK(unix_lines[2] == "c");

  const auto dos = split_lines("a\r\nb\r\n");
  REQUIRE(dos.size() == 2);
  CHECK(dos[0] == "a");
  CHECK(dos[1] == "b");

  const auto mac = split_lines("a\rb");
  REQUIRE(mac.size() == 2);

  const auto mixed = split_lines("a\r\n\nb");
  REQUIRE(mixed.size() == 3);
  CHECK(mixed[1] == "");
}

TEST_CASE("split_lines adds no phantom trailing line") {
  CHECK(split_lines("").empty());
  CHECK(split_lines("a\n").size() == 1);
  CHECK(split_lines("\n").size() == 1);
  CHECK(split_lines("a").size() == 1);
  CHECK(count_lines("x\ny\n") == 2);
  CHECK(count_lines("x\ny") == 2);
}

TEST_CASE("expand_tabs pads to the next tab stop") {
  CHECK(expand_tabs("\tx", 4) == "    x");
  CHECK(expand_tabs("ab\tx", 4) == "ab  x");
  CHECK(expand_tabs("abcd\tx", 4) == "abcd    x");
  CHECK(expand_tabs("a\tb\tc", 4) == "a   b   c");
  CHECK(expand_tabs("no tabs", 4) == "no tabs");
  // Columns count codepoints, not bytes.
  CHECK(expand_tabs("\xc3\xa9\tx", 4) == "\xc3\xa9   x");
}

TEST_CASE("is_space_cp covers the ascii whitespace set") {
  for (char32_t cp : {U' ', U'\t', U'\n', U'\r', U'\v', U'\f'}) CHECK(is_space_cp(cp));
  CHECK_FALSE(is_space_cp(U'a'));
  CHECK_FALSE(is_space_cp(U'\0'));
  CHECK_FALSE(is_space_cp(0x00A0));  // NBSP renders as a glyph
}

TEST_CASE("read_file on a missing path is an io error") {
  CHECK_THROWS_AS(read_file("/nonexistent/file/for/test"), Error);
  try {
    read_file("/nonexistent/file/for/test");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Io);
  }
}

TEST_CASE("fnv1a64 matches the published test vectors") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("digest_hex is 16 lowercase hex chars") {
  const std::string d = digest_hex("anything");
  CHECK(d.size() == 16);
  for (char c : d) CHECK(((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f')));
  CHECK(digest_hex("") == "cbf29ce484222325");
}
