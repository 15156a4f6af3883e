#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "core/lexer.hpp"

namespace codeocr {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  bool operator==(const Rgb&) const = default;
};

// Foreground colors per token category. Whitespace is not themeable: it
// always takes the background color, which is how the invariant that the
// background differs from every foreground stays satisfiable.
struct StyleTheme {
  std::string name;
  Rgb background{255, 255, 255};
  Rgb default_foreground{0, 0, 0};
  std::map<TokenCategory, Rgb> categories;

  static StyleTheme from_json(std::string_view json_text);
  static const StyleTheme& default_light();

  // Background for whitespace, the category color otherwise, falling back to
  // default_foreground for unmapped categories.
  Rgb color_for(TokenCategory category) const;
};

struct StyledSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  Rgb color;
  bool inkless = false;  // whitespace: nothing is drawn
};

// Preserves span boundaries and order; only attaches colors.
std::vector<StyledSpan> apply_theme(const std::vector<LexSpan>& spans,
                                    const StyleTheme& theme);

}  // namespace codeocr
