#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace codeocr {

// Alpha bitmap for one glyph at a fixed pixel size, anchored to the pen:
// page_x = pen_x + left, page_y = baseline_y + top (y grows downward).
struct GlyphBitmap {
  int left = 0;
  int top = 0;
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> alpha;  // width * height, row-major
};

// Monospaced TrueType font with its own outline rasterizer. Rasterization is
// pure double arithmetic in a fixed order (contour order from the font, 16
// uniform subdivisions per quadratic), so the bitmap for a given
// (glyph, size, bold) is identical on every run, thread count and platform.
class MonoFont {
 public:
  // Parses TTF bytes; the view must outlive the font.
  explicit MonoFont(std::string_view ttf);
  ~MonoFont();

  MonoFont(const MonoFont&) = delete;
  MonoFont& operator=(const MonoFont&) = delete;

  int units_per_em() const;

  // Character cell width: the advance of 'M' scaled to `font_size` pixels
  // per em, rounded half up. Every glyph occupies exactly one cell.
  int advance_px(int font_size) const;
  int ascent_px(int font_size) const;
  int descent_px(int font_size) const;  // positive, below baseline

  // 0 means the codepoint has no glyph (the caller draws glyph 0 instead).
  std::uint16_t glyph_index(char32_t cp) const;

  // Cached per (glyph, size, bold). Bold is a one-pixel dilation right and
  // down of the regular coverage. Thread-safe.
  const GlyphBitmap& glyph(std::uint16_t glyph_id, int font_size, bool bold);

  // Opens the bundled DejaVu Sans Mono. Shared process-wide instance.
  static MonoFont& bundled();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace codeocr
