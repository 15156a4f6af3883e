#include <doctest/doctest.h>

#include <string>

#include "core/error.hpp"
#include "core/font.hpp"
#include "core/raster.hpp"
#include "core/theme.hpp"

using namespace codeocr;

namespace {

std::string lines_of(int n, const std::string& body = "x = 1") {
  std::string out;
  for (int i = 0; i < n; ++i) out += body + "\n";
  return out;
}

Rgb pixel_at(const Image& img, int x, int y) {
  const std::size_t i = (static_cast<std::size_t>(y) * img.width + x) * 3;
  return {img.pixels[i], img.pixels[i + 1], img.pixels[i + 2]};
}

bool contains_color(const Image& img, Rgb c) {
  for (std::size_t i = 0; i + 2 < img.pixels.size(); i += 3) {
    if (img.pixels[i] == c.r && img.pixels[i + 1] == c.g && img.pixels[i + 2] == c.b) {
      return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("default geometry: margin, columns, rows") {
  RenderConfig config;
  config.validate();
  CHECK(config.margin_px() == 22);   // 0.01 * 2240 = 22.4
  CHECK(config.line_px() == 40);

  const DocumentLayout doc = layout_document("x\n", config, MonoFont::bundled());
  CHECK(doc.columns == 91);          // floor((2240 - 44) / 24)
  CHECK(doc.rows_per_page == 54);    // floor((2240 - 44) / 40)
}

TEST_CASE("54 lines fill one page, 55 spill to two") {
  RenderConfig config;
  MonoFont& font = MonoFont::bundled();
  CHECK(layout_document(lines_of(54), config, font).pages.size() == 1);
  const DocumentLayout doc = layout_document(lines_of(55), config, font);
  REQUIRE(doc.pages.size() == 2);
  CHECK(doc.pages[0].line_start == 0);
  CHECK(doc.pages[0].line_end == 54);
  CHECK(doc.pages[1].line_start == 54);
  CHECK(doc.pages[1].line_end == 55);
}

TEST_CASE("empty source still yields one page") {
  RenderConfig config;
  const DocumentLayout doc = layout_document("", config, MonoFont::bundled());
  REQUIRE(doc.pages.size() == 1);
  CHECK(doc.pages[0].rows.empty());
}

TEST_CASE("long lines wrap at the column boundary") {
  RenderConfig config;
  const std::string line(91 + 10, 'a');
  const DocumentLayout doc = layout_document(line + "\n", config, MonoFont::bundled());
  CHECK(doc.wrapped_rows == 1);
  REQUIRE(doc.pages.size() == 1);
  REQUIRE(doc.pages[0].rows.size() == 2);
  CHECK(doc.pages[0].rows[0].cell_end == 91);
  CHECK(doc.pages[0].rows[1].continuation);
  CHECK(doc.pages[0].rows[1].cell_start == 91);
  CHECK(doc.pages[0].rows[1].cell_end == 101);
}

TEST_CASE("wrapping keeps a line on one page") {
  RenderConfig config;
  // 53 plain lines then one that wraps to 2 rows: must move to page 2 whole.
  std::string src = lines_of(53);
  src += std::string(100, 'b') + "\n";
  const DocumentLayout doc = layout_document(src, config, MonoFont::bundled());
  REQUIRE(doc.pages.size() == 2);
  CHECK(doc.pages[0].line_end == 53);
  CHECK(doc.pages[1].rows.size() == 2);
}

TEST_CASE("clipping without wrap records the loss") {
  RenderConfig config;
  config.wrap_long_lines = false;
  const std::string line(200, 'c');
  const DocumentLayout doc = layout_document(line + "\n", config, MonoFont::bundled());
  CHECK(doc.wrapped_rows == 0);
  CHECK(doc.clipped_lines == 1);
  CHECK(doc.pages[0].rows.size() == 1);
  CHECK(doc.pages[0].rows[0].cell_end == 91);
}

TEST_CASE("a line taller than a page is an overflow error") {
  RenderConfig config;
  const std::string monster(91 * 55, 'd');  // needs 55 rows
  CHECK_THROWS_AS(layout_document(monster, config, MonoFont::bundled()), Error);
  try {
    layout_document(monster, config, MonoFont::bundled());
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Overflow);
  }
}

TEST_CASE("tabs expand to aligned columns in layout") {
  RenderConfig config;
  config.tab_width = 4;
  const DocumentLayout doc = layout_document("\tx\n", config, MonoFont::bundled());
  // Tab becomes 4 cells, then 'x'.
  CHECK(doc.pages[0].rows[0].cell_end == 5);
}

TEST_CASE("render produces white margins and black ink") {
  RenderConfig config;
  const RenderResult r = render_document("M\n", config, "plain-text");
  REQUIRE(r.pages.size() == 1);
  const Image& page = r.pages[0];
  CHECK(page.width == 2240);
  CHECK(page.height == 2240);
  CHECK(pixel_at(page, 0, 0) == Rgb{255, 255, 255});
  CHECK(pixel_at(page, 2239, 2239) == Rgb{255, 255, 255});
  CHECK(contains_color(page, Rgb{0, 0, 0}));
}

TEST_CASE("rendering is deterministic") {
  RenderConfig config;
  const std::string src = "def f(x):\n    return x * 2\n";
  const RenderResult a = render_document(src, config, "python");
  const RenderResult b = render_document(src, config, "python");
  REQUIRE(a.pages.size() == b.pages.size());
  CHECK(a.pages[0].pixels == b.pages[0].pixels);
}

TEST_CASE("bold style changes the ink") {
  RenderConfig plain_config;
  RenderConfig bold_config;
  bold_config.style = RenderStyle::Bold;
  const RenderResult plain = render_document("word\n", plain_config, "plain-text");
  const RenderResult bold = render_document("word\n", bold_config, "plain-text");
  CHECK(plain.pages[0].pixels != bold.pages[0].pixels);
  CHECK(bold.manifest.style == "bold");
}

TEST_CASE("highlight paints keywords in the theme color") {
  RenderConfig config;
  config.style = RenderStyle::Highlight;
  const RenderResult r = render_document("def f():\n    return 1\n", config, "python");
  const StyleTheme& theme = StyleTheme::default_light();
  const Rgb keyword = theme.color_for(TokenCategory::Keyword);
  REQUIRE_FALSE(keyword == theme.default_foreground);
  CHECK(contains_color(r.pages[0], keyword));
}

TEST_CASE("highlight with unknown language falls back to plain with a warning") {
  RenderConfig config;
  config.style = RenderStyle::Highlight;
  const RenderResult r = render_document("hello\n", config, "klingon");
  bool warned = false;
  for (const auto& w : r.manifest.warnings) {
    if (w.find("klingon") != std::string::npos) warned = true;
  }
  CHECK(warned);
  CHECK(contains_color(r.pages[0], Rgb{0, 0, 0}));
}

TEST_CASE("codepoints without a glyph warn once and draw the fallback") {
  RenderConfig config;
  // U+F0000 twice: one warning, deduplicated.
  const std::string src = "a \xf3\xb0\x80\x80 b \xf3\xb0\x80\x80\n";
  const RenderResult r = render_document(src, config, "plain-text");
  int hits = 0;
  for (const auto& w : r.manifest.warnings) {
    if (w.find("U+F0000") != std::string::npos) ++hits;
  }
  CHECK(hits == 1);
}

TEST_CASE("manifest records pages and geometry") {
  RenderConfig config;
  const RenderResult r = render_document(lines_of(60), config, "plain-text");
  CHECK(r.manifest.columns == 91);
  CHECK(r.manifest.rows_per_page == 54);
  REQUIRE(r.manifest.pages.size() == 2);
  CHECK(r.manifest.pages[0].width == 2240);
  CHECK(r.manifest.pages[1].line_start == 54);
  const auto doc = r.manifest.to_json();
  CHECK(doc.at("columns").get<int>() == 91);
  CHECK(doc.at("pages").size() == 2);
}

TEST_CASE("config validation rejects non-divisible page sides") {
  RenderConfig config;
  config.base_width = 2241;  // not divisible by 14 or 16
  CHECK_THROWS_AS(config.validate(), Error);
  RenderConfig config2;
  config2.base_width = 14 * 16;  // divisible by both: 224
  config2.base_height = 14 * 16 * 2;
  CHECK_NOTHROW(config2.validate());
}

TEST_CASE("style names round-trip") {
  CHECK(style_from_name("plain") == RenderStyle::Plain);
  CHECK(style_from_name("bold") == RenderStyle::Bold);
  CHECK(style_from_name("highlight") == RenderStyle::Highlight);
  CHECK(style_name(RenderStyle::Highlight) == "highlight");
  CHECK_THROWS_AS(style_from_name("fancy"), Error);
}
