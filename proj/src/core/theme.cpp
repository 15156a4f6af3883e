#include "core/theme.hpp"

#include <nlohmann/json.hpp>

#include "core/assets.hpp"
#include "core/error.hpp"

namespace codeocr {

namespace {

Rgb parse_color(const nlohmann::json& value, const std::string& where) {
  require(value.is_string(), ErrorCode::Config,
          "theme: " + where + " must be a \"#rrggbb\" string");
  const std::string text = value.get<std::string>();
  require(text.size() == 7 && text[0] == '#', ErrorCode::Config,
          "theme: " + where + " must be a \"#rrggbb\" string");
  std::uint8_t parts[3] = {0, 0, 0};
  for (std::size_t i = 0; i < 6; ++i) {
    const char c = text[1 + i];
    int digit = 0;
    if (c >= '0' && c <= '9') {
      digit = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      digit = 10 + (c - 'a');
    } else if (c >= 'A' && c <= 'F') {
      digit = 10 + (c - 'A');
    } else {
      fail(ErrorCode::Config, "theme: " + where + " has a non-hex digit");
    }
    parts[i / 2] = static_cast<std::uint8_t>(parts[i / 2] * 16 + digit);
  }
  return Rgb{parts[0], parts[1], parts[2]};
}

TokenCategory category_from_name(const std::string& name) {
  for (TokenCategory c : {TokenCategory::Keyword, TokenCategory::Identifier,
                          TokenCategory::Number, TokenCategory::String,
                          TokenCategory::Comment, TokenCategory::Operator,
                          TokenCategory::Punctuation, TokenCategory::Default}) {
    if (category_name(c) == name) return c;
  }
  if (name == "Whitespace") {
    fail(ErrorCode::Config, "theme: Whitespace is not themeable");
  }
  fail(ErrorCode::Config, "theme: unknown category: " + name);
}

}  // namespace

StyleTheme StyleTheme::from_json(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Config, std::string("theme: invalid JSON: ") + e.what());
  }

  StyleTheme t;
  try {
    t.name = doc.at("name").get<std::string>();
    t.background = parse_color(doc.at("background"), "background");
    t.default_foreground = parse_color(doc.at("default_foreground"), "default_foreground");
    for (const auto& [key, value] : doc.at("categories").items()) {
      t.categories[category_from_name(key)] = parse_color(value, key);
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Config, std::string("theme: ") + e.what());
  }

  require(!t.name.empty(), ErrorCode::Config, "theme: empty name");
  require(!(t.background == t.default_foreground), ErrorCode::Config,
          "theme: background must differ from default foreground");
  for (const auto& [cat, color] : t.categories) {
    require(!(color == t.background), ErrorCode::Config,
            "theme: background must differ from " + std::string(category_name(cat)) +
                " foreground");
  }
  return t;
}

const StyleTheme& StyleTheme::default_light() {
  static const StyleTheme theme = from_json(assets::theme_default());
  return theme;
}

Rgb StyleTheme::color_for(TokenCategory category) const {
  if (category == TokenCategory::Whitespace) return background;
  const auto it = categories.find(category);
  return it == categories.end() ? default_foreground : it->second;
}

std::vector<StyledSpan> apply_theme(const std::vector<LexSpan>& spans,
                                    const StyleTheme& theme) {
  std::vector<StyledSpan> out;
  out.reserve(spans.size());
  for (const LexSpan& s : spans) {
    out.push_back({s.start, s.end, theme.color_for(s.category),
                   s.category == TokenCategory::Whitespace});
  }
  return out;
}

}  // namespace codeocr
