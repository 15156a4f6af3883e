#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace codeocr {

// Lossy UTF-8 decode: malformed sequences become U+FFFD, one replacement per
// rejected byte, so the result is the same on every platform.
std::vector<char32_t> decode_utf8(std::string_view text);

// Same decode, also reporting the byte offset where each codepoint starts.
// offsets.size() == codepoints.size() + 1; the last entry is text.size().
void decode_utf8(std::string_view text, std::vector<char32_t>& codepoints,
                 std::vector<std::size_t>& offsets);

std::string encode_utf8(const std::vector<char32_t>& codepoints);

// Splits on line breaks ("\n", "\r\n", lone "\r"); the terminator is not part
// of the line and a trailing terminator does not add an empty final line.
std::vector<std::string_view> split_lines(std::string_view text);

// Number of lines as defined by split_lines.
std::size_t count_lines(std::string_view text);

// Replaces each tab with spaces up to the next multiple of `tab_width`
// columns, counting one column per codepoint from the start of the string.
std::string expand_tabs(std::string_view line, int tab_width = 4);

bool is_space_cp(char32_t cp);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view bytes);

}  // namespace codeocr
