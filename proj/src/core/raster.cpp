#include "core/raster.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"
#include "core/lexer.hpp"
#include "core/text.hpp"

namespace codeocr {

namespace {

int round_half_up(double v) { return static_cast<int>(std::floor(v + 0.5)); }

// One character cell: the codepoint to draw and the byte offset it came
// from, so themed span colors survive tab expansion.
struct Cell {
  char32_t cp;
  std::size_t byte_offset;
};

std::vector<Cell> expand_line(std::string_view line, std::size_t line_byte_base,
                              int tab_width) {
  std::vector<Cell> cells;
  cells.reserve(line.size());
  std::vector<char32_t> cps;
  std::vector<std::size_t> offsets;
  decode_utf8(line, cps, offsets);
  for (std::size_t i = 0; i < cps.size(); ++i) {
    const std::size_t off = line_byte_base + offsets[i];
    if (cps[i] == U'\t') {
      const std::size_t w = static_cast<std::size_t>(tab_width);
      const std::size_t pad = w - (cells.size() % w);
      for (std::size_t k = 0; k < pad; ++k) cells.push_back({U' ', off});
    } else {
      cells.push_back({cps[i], off});
    }
  }
  return cells;
}

std::size_t rows_needed(std::size_t cell_count, int columns, bool wrap) {
  if (!wrap || cell_count == 0) return 1;
  return (cell_count + static_cast<std::size_t>(columns) - 1) /
         static_cast<std::size_t>(columns);
}

std::string hex_cp(char32_t cp) {
  static const char* digits = "0123456789ABCDEF";
  std::string s;
  for (int shift = 20; shift >= 0; shift -= 4) {
    const unsigned d = (cp >> shift) & 0xF;
    if (!s.empty() || d != 0 || shift < 16) s.push_back(digits[d]);
  }
  return "U+" + s;
}

}  // namespace

RenderStyle style_from_name(std::string_view name) {
  if (name == "plain") return RenderStyle::Plain;
  if (name == "bold") return RenderStyle::Bold;
  if (name == "highlight") return RenderStyle::Highlight;
  fail(ErrorCode::Config, "unknown render style: " + std::string(name));
}

std::string_view style_name(RenderStyle style) {
  switch (style) {
    case RenderStyle::Plain: return "plain";
    case RenderStyle::Bold: return "bold";
    case RenderStyle::Highlight: return "highlight";
  }
  return "plain";
}

void RenderConfig::validate() const {
  require(base_width > 0 && base_height > 0, ErrorCode::Config,
          "render: page dimensions must be positive");
  for (int patch : {14, 16}) {
    require(base_width % patch == 0 && base_height % patch == 0, ErrorCode::Config,
            "render: page dimensions must be divisible by " + std::to_string(patch));
  }
  require(font_size > 0, ErrorCode::Config, "render: font size must be positive");
  require(line_height > 0.0, ErrorCode::Config, "render: line height must be positive");
  require(margin_fraction >= 0.0 && margin_fraction < 0.5, ErrorCode::Config,
          "render: margin fraction must be in [0, 0.5)");
  require(tab_width > 0, ErrorCode::Config, "render: tab width must be positive");
  require(line_px() >= 1, ErrorCode::Config, "render: line pitch rounds to zero");
}

int RenderConfig::margin_px() const {
  return round_half_up(margin_fraction * base_width);
}

int RenderConfig::line_px() const {
  return round_half_up(line_height * font_size);
}

nlohmann::json render_config_to_json(const RenderConfig& config) {
  return {{"base_width", config.base_width},
          {"base_height", config.base_height},
          {"font_size", config.font_size},
          {"line_height", config.line_height},
          {"margin_fraction", config.margin_fraction},
          {"style", std::string(style_name(config.style))},
          {"wrap_long_lines", config.wrap_long_lines},
          {"tab_width", config.tab_width}};
}

RenderConfig render_config_from_json(const nlohmann::json& doc) {
  RenderConfig config;
  try {
    if (doc.contains("base_width")) config.base_width = doc.at("base_width").get<int>();
    if (doc.contains("base_height")) config.base_height = doc.at("base_height").get<int>();
    if (doc.contains("font_size")) config.font_size = doc.at("font_size").get<int>();
    if (doc.contains("line_height")) config.line_height = doc.at("line_height").get<double>();
    if (doc.contains("margin_fraction")) {
      config.margin_fraction = doc.at("margin_fraction").get<double>();
    }
    if (doc.contains("style")) {
      config.style = style_from_name(doc.at("style").get<std::string>());
    }
    if (doc.contains("wrap_long_lines")) {
      config.wrap_long_lines = doc.at("wrap_long_lines").get<bool>();
    }
    if (doc.contains("tab_width")) config.tab_width = doc.at("tab_width").get<int>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Config, std::string("render: ") + e.what());
  }
  config.validate();
  return config;
}

DocumentLayout layout_document(std::string_view source, const RenderConfig& config,
                               MonoFont& font) {
  config.validate();

  const int margin = config.margin_px();
  const int advance = font.advance_px(config.font_size);
  require(advance > 0, ErrorCode::Config, "render: glyph advance rounds to zero");

  DocumentLayout doc;
  doc.columns = (config.base_width - 2 * margin) / advance;
  doc.rows_per_page = (config.base_height - 2 * margin) / config.line_px();
  require(doc.columns >= 1, ErrorCode::Config, "render: no room for any column");

  const std::vector<std::string_view> lines = split_lines(source);

  PageLayout page;
  page.page_index = 0;
  page.line_start = 0;
  std::size_t used_rows = 0;

  const auto close_page = [&](std::size_t next_line) {
    page.line_end = next_line;
    doc.pages.push_back(std::move(page));
    page = PageLayout{};
    page.page_index = static_cast<int>(doc.pages.size());
    page.line_start = next_line;
    used_rows = 0;
  };

  for (std::size_t li = 0; li < lines.size(); ++li) {
    const std::size_t base = static_cast<std::size_t>(lines[li].data() - source.data());
    const std::vector<Cell> cells = expand_line(lines[li], base, config.tab_width);
    std::size_t need = rows_needed(cells.size(), doc.columns, config.wrap_long_lines);

    if (need > static_cast<std::size_t>(doc.rows_per_page)) {
      fail(ErrorCode::Overflow,
           "render: line " + std::to_string(li + 1) + " needs " + std::to_string(need) +
               " rows but a page holds " + std::to_string(doc.rows_per_page));
    }
    if (used_rows + need > static_cast<std::size_t>(doc.rows_per_page)) {
      require(used_rows > 0, ErrorCode::Overflow,
              "render: page cannot hold line " + std::to_string(li + 1));
      close_page(li);
    }

    const std::size_t cols = static_cast<std::size_t>(doc.columns);
    if (!config.wrap_long_lines && cells.size() > cols) {
      page.rows.push_back({li, 0, cols, false});
      ++doc.clipped_lines;
      ++used_rows;
    } else if (cells.empty()) {
      page.rows.push_back({li, 0, 0, false});
      ++used_rows;
    } else {
      for (std::size_t r = 0; r < need; ++r) {
        const std::size_t cs = r * cols;
        const std::size_t ce = std::min(cells.size(), cs + cols);
        page.rows.push_back({li, cs, ce, r > 0});
        if (r > 0) ++doc.wrapped_rows;
      }
      used_rows += need;
    }
  }
  close_page(lines.size());
  return doc;
}

PageRenderResult rasterize_page(std::string_view source, const DocumentLayout& doc,
                                const PageLayout& page,
                                const std::vector<StyledSpan>& spans,
                                const RenderConfig& config, MonoFont& font) {
  config.validate();

  PageRenderResult result;
  result.image = Image::filled(config.base_width, config.base_height, 255, 255, 255);

  const int margin = config.margin_px();
  const int advance = font.advance_px(config.font_size);
  const int ascent = font.ascent_px(config.font_size);
  const bool bold = config.style == RenderStyle::Bold;
  const std::vector<std::string_view> lines = split_lines(source);

  std::size_t span_i = 0;
  const auto color_at = [&](std::size_t byte_off) -> const StyledSpan* {
    while (span_i < spans.size() && spans[span_i].end <= byte_off) ++span_i;
    if (span_i < spans.size() && spans[span_i].start <= byte_off) return &spans[span_i];
    return nullptr;
  };

  std::vector<char32_t> warned;
  std::size_t last_line = static_cast<std::size_t>(-1);
  std::vector<Cell> cells;

  for (std::size_t r = 0; r < page.rows.size(); ++r) {
    const RowSlice& row = page.rows[r];
    if (row.line_index != last_line) {
      require(row.line_index < lines.size(), ErrorCode::Precondition,
              "render: layout does not match source");
      const std::string_view line = lines[row.line_index];
      cells = expand_line(line, static_cast<std::size_t>(line.data() - source.data()),
                          config.tab_width);
      last_line = row.line_index;
    }

    const int row_top = margin + static_cast<int>(r) * config.line_px();
    const int baseline = row_top + ascent;

    for (std::size_t k = row.cell_start; k < row.cell_end && k < cells.size(); ++k) {
      const Cell& cell = cells[k];
      if (is_space_cp(cell.cp)) continue;

      const StyledSpan* span = color_at(cell.byte_offset);
      if (span && span->inkless) continue;
      const Rgb fg = span ? span->color : Rgb{0, 0, 0};

      std::uint16_t gid = font.glyph_index(cell.cp);
      if (gid == 0) {
        if (std::find(warned.begin(), warned.end(), cell.cp) == warned.end()) {
          warned.push_back(cell.cp);
          result.warnings.push_back("no glyph for " + hex_cp(cell.cp) +
                                    ", drew replacement box");
        }
      }

      const GlyphBitmap& bm = font.glyph(gid, config.font_size, bold);
      if (bm.alpha.empty()) continue;

      const int pen_x = margin + static_cast<int>(k - row.cell_start) * advance;
      const int gx0 = pen_x + bm.left;
      const int gy0 = baseline + bm.top;
      for (int gy = 0; gy < bm.height; ++gy) {
        const int py = gy0 + gy;
        if (py < 0 || py >= config.base_height) continue;
        for (int gx = 0; gx < bm.width; ++gx) {
          const int px = gx0 + gx;
          if (px < 0 || px >= config.base_width) continue;
          const std::uint8_t a = bm.alpha[static_cast<std::size_t>(gy) * bm.width + gx];
          if (a == 0) continue;
          auto* p = result.image.pixels.data() +
                    (static_cast<std::size_t>(py) * config.base_width + px) * 3;
          const std::uint8_t fgc[3] = {fg.r, fg.g, fg.b};
          for (int ch = 0; ch < 3; ++ch) {
            p[ch] = static_cast<std::uint8_t>(
                (fgc[ch] * a + p[ch] * (255 - a) + 127) / 255);
          }
        }
      }
    }
  }
  (void)doc;
  return result;
}

nlohmann::json RenderManifest::to_json() const {
  nlohmann::json pages_json = nlohmann::json::array();
  for (const PageInfo& p : pages) {
    pages_json.push_back({{"index", p.index},
                          {"line_start", p.line_start},
                          {"line_end", p.line_end},
                          {"width", p.width},
                          {"height", p.height}});
  }
  return {{"style", style},
          {"font_size", font_size},
          {"columns", columns},
          {"rows_per_page", rows_per_page},
          {"wrapped_rows", wrapped_rows},
          {"clipped_lines", clipped_lines},
          {"pages", pages_json},
          {"warnings", warnings}};
}

RenderResult render_document(std::string_view source, const RenderConfig& config,
                             const std::string& language) {
  config.validate();
  MonoFont& font = MonoFont::bundled();

  RenderResult result;
  result.manifest.style = std::string(style_name(config.style));
  result.manifest.font_size = config.font_size;

  std::vector<StyledSpan> spans;
  if (config.style == RenderStyle::Highlight && language != "plain-text") {
    const LanguageProfile* profile = LanguageRegistry::builtin().by_name(language);
    if (profile == nullptr) {
      result.manifest.warnings.push_back("unknown language '" + language +
                                         "', rendered without highlighting");
      spans.push_back({0, source.size(), Rgb{0, 0, 0}, false});
    } else {
      spans = apply_theme(lex(source, *profile), StyleTheme::default_light());
    }
  } else {
    spans.push_back({0, source.size(), Rgb{0, 0, 0}, false});
  }

  const DocumentLayout doc = layout_document(source, config, font);
  result.manifest.columns = doc.columns;
  result.manifest.rows_per_page = doc.rows_per_page;
  result.manifest.wrapped_rows = doc.wrapped_rows;
  result.manifest.clipped_lines = doc.clipped_lines;

  for (const PageLayout& page : doc.pages) {
    PageRenderResult pr = rasterize_page(source, doc, page, spans, config, font);
    for (std::string& w : pr.warnings) {
      if (std::find(result.manifest.warnings.begin(), result.manifest.warnings.end(),
                    w) == result.manifest.warnings.end()) {
        result.manifest.warnings.push_back(std::move(w));
      }
    }
    result.manifest.pages.push_back({page.page_index, page.line_start, page.line_end,
                                     config.base_width, config.base_height});
    result.pages.push_back(std::move(pr.image));
  }
  return result;
}

}  // namespace codeocr
