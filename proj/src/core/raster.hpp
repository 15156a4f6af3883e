#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "core/font.hpp"
#include "core/image.hpp"
#include "core/theme.hpp"

namespace codeocr {

enum class RenderStyle { Plain, Bold, Highlight };

RenderStyle style_from_name(std::string_view name);  // config error if unknown
std::string_view style_name(RenderStyle style);

struct RenderConfig {
  int base_width = 2240;
  int base_height = 2240;
  int font_size = 40;
  double line_height = 1.0;       // multiplier applied to font_size
  double margin_fraction = 0.01;  // of base_width, same margin on all sides
  RenderStyle style = RenderStyle::Plain;
  bool wrap_long_lines = true;
  int tab_width = 4;

  // Page sides must be divisible by every supported patch size (14 and 16)
  // so token counting is exact for either patch grid.
  void validate() const;

  int margin_px() const;  // round half up
  int line_px() const;    // row pitch, round half up
};

nlohmann::json render_config_to_json(const RenderConfig& config);
// Missing keys keep their defaults; the result is validated.
RenderConfig render_config_from_json(const nlohmann::json& doc);

// One rendered row: a slice of the expanded source line, in codepoints.
struct RowSlice {
  std::size_t line_index = 0;
  std::size_t cell_start = 0;
  std::size_t cell_end = 0;
  bool continuation = false;  // produced by wrapping a long line
};

struct PageLayout {
  int page_index = 0;
  std::size_t line_start = 0;  // first source line on this page
  std::size_t line_end = 0;    // one past the last
  std::vector<RowSlice> rows;
};

struct DocumentLayout {
  std::vector<PageLayout> pages;  // never empty; one empty page for ""
  int columns = 0;                // character cells per row
  int rows_per_page = 0;
  std::size_t wrapped_rows = 0;   // continuation rows across the document
  std::size_t clipped_lines = 0;  // lines truncated with wrapping disabled
};

// Whole lines only: a source line never splits across pages. A single line
// needing more rows than one page holds is an overflow error (wrapping on).
DocumentLayout layout_document(std::string_view source, const RenderConfig& config,
                               MonoFont& font);

struct PageRenderResult {
  Image image;
  std::vector<std::string> warnings;  // codepoints without a glyph
};

// Draws one page on a white background. `spans` carry byte ranges over the
// original source with resolved colors; inkless spans draw nothing. Glyphs
// may overhang their cell (descenders, bold); rows are drawn top to bottom
// and cells left to right, so overlaps resolve the same way every time.
PageRenderResult rasterize_page(std::string_view source, const DocumentLayout& doc,
                                const PageLayout& page,
                                const std::vector<StyledSpan>& spans,
                                const RenderConfig& config, MonoFont& font);

struct PageInfo {
  int index = 0;
  std::size_t line_start = 0;
  std::size_t line_end = 0;
  int width = 0;
  int height = 0;
};

struct RenderManifest {
  std::string style;
  int font_size = 0;
  int columns = 0;
  int rows_per_page = 0;
  std::size_t wrapped_rows = 0;
  std::size_t clipped_lines = 0;
  std::vector<PageInfo> pages;
  std::vector<std::string> warnings;  // deduplicated, in first-seen order

  nlohmann::json to_json() const;
};

struct RenderResult {
  std::vector<Image> pages;
  RenderManifest manifest;
};

// `language` is a profile name or "plain-text". Highlight style lexes with
// that profile and the default light theme; an unknown language falls back
// to plain rendering and records a warning in the manifest.
RenderResult render_document(std::string_view source, const RenderConfig& config,
                             const std::string& language);

}  // namespace codeocr
