#include "core/font.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "core/assets.hpp"
#include "core/error.hpp"

namespace codeocr {

namespace {

constexpr int kCurveSegments = 16;  // uniform subdivision per quadratic

int round_half_up(double v) { return static_cast<int>(std::floor(v + 0.5)); }

struct Reader {
  const std::uint8_t* data;
  std::size_t size;

  std::uint8_t u8(std::size_t off) const {
    require(off < size, ErrorCode::Parse, "font: read past end");
    return data[off];
  }
  std::uint16_t u16(std::size_t off) const {
    require(off + 2 <= size, ErrorCode::Parse, "font: read past end");
    return static_cast<std::uint16_t>((data[off] << 8) | data[off + 1]);
  }
  std::int16_t i16(std::size_t off) const {
    return static_cast<std::int16_t>(u16(off));
  }
  std::uint32_t u32(std::size_t off) const {
    require(off + 4 <= size, ErrorCode::Parse, "font: read past end");
    return (static_cast<std::uint32_t>(data[off]) << 24) |
           (static_cast<std::uint32_t>(data[off + 1]) << 16) |
           (static_cast<std::uint32_t>(data[off + 2]) << 8) |
           static_cast<std::uint32_t>(data[off + 3]);
  }
};

struct OutlinePoint {
  double x = 0;
  double y = 0;
  bool on_curve = false;
};

using Contour = std::vector<OutlinePoint>;

// cmap format 4 segment arrays.
struct Cmap4 {
  std::vector<std::uint16_t> end_code;
  std::vector<std::uint16_t> start_code;
  std::vector<std::int16_t> id_delta;
  std::vector<std::uint16_t> id_range_offset;
  std::size_t range_offset_base = 0;  // offset of idRangeOffset[0] in file
};

struct CacheKey {
  std::uint32_t glyph;
  std::uint32_t size;
  bool bold;
  bool operator==(const CacheKey&) const = default;
};

struct CacheKeyHash {
  std::size_t operator()(const CacheKey& k) const {
    std::uint64_t v = (static_cast<std::uint64_t>(k.glyph) << 32) |
                      (static_cast<std::uint64_t>(k.size) << 1) |
                      (k.bold ? 1u : 0u);
    v ^= v >> 33;
    v *= 0xff51afd7ed558ccdULL;
    v ^= v >> 33;
    return static_cast<std::size_t>(v);
  }
};

// Exact-area scanline accumulation. Edges deposit signed coverage deltas
// into a cell grid; a running sum across the grid yields per-pixel coverage.
class Accumulator {
 public:
  Accumulator(int width, int height)
      : w_(width + 2), h_(height), cells_(static_cast<std::size_t>(w_) * h_, 0.0) {}

  void line(double x0, double y0, double x1, double y1) {
    if (y0 == y1) return;
    double dir = 1.0;
    if (y0 > y1) {
      std::swap(x0, x1);
      std::swap(y0, y1);
      dir = -1.0;
    }
    const double dxdy = (x1 - x0) / (y1 - y0);
    double x = x0;
    int y = static_cast<int>(std::floor(y0));
    if (y < 0) {
      x -= y0 * dxdy;
      y = 0;
    }
    const int y_end = std::min<int>(h_, static_cast<int>(std::ceil(y1)));
    for (; y < y_end; ++y) {
      const std::size_t row = static_cast<std::size_t>(y) * w_;
      const double dy = std::min<double>(y + 1, y1) - std::max<double>(y, y0);
      const double xnext = x + dxdy * dy;
      const double d = dy * dir;
      double xa = x, xb = xnext;
      if (xa > xb) std::swap(xa, xb);
      const double xa_floor = std::floor(xa);
      int xai = static_cast<int>(xa_floor);
      const double xb_ceil = std::ceil(xb);
      int xbi = static_cast<int>(xb_ceil);
      if (xai < 0) xai = 0;
      if (xbi > w_ - 1) xbi = w_ - 1;
      if (xbi <= xai + 1) {
        const double xmf = 0.5 * (x + xnext) - xa_floor;
        cells_[row + static_cast<std::size_t>(xai)] += d - d * xmf;
        cells_[row + static_cast<std::size_t>(xai) + 1] += d * xmf;
      } else {
        const double s = 1.0 / (xb - xa);
        const double xaf = xa - xa_floor;
        const double a0 = 0.5 * s * (1.0 - xaf) * (1.0 - xaf);
        const double xbf = xb - xb_ceil + 1.0;
        const double am = 0.5 * s * xbf * xbf;
        cells_[row + static_cast<std::size_t>(xai)] += d * a0;
        if (xbi == xai + 2) {
          cells_[row + static_cast<std::size_t>(xai) + 1] += d * (1.0 - a0 - am);
        } else {
          const double a1 = s * (1.5 - xaf);
          cells_[row + static_cast<std::size_t>(xai) + 1] += d * (a1 - a0);
          for (int xi = xai + 2; xi < xbi - 1; ++xi) {
            cells_[row + static_cast<std::size_t>(xi)] += d * s;
          }
          const double a2 = a1 + static_cast<double>(xbi - xai - 3) * s;
          cells_[row + static_cast<std::size_t>(xbi) - 1] += d * (1.0 - a2 - am);
        }
        cells_[row + static_cast<std::size_t>(xbi)] += d * am;
      }
      x = xnext;
    }
  }

  // Coverage quantized to 8 bits, half-up.
  std::vector<std::uint8_t> resolve(int out_width) const {
    std::vector<std::uint8_t> out(static_cast<std::size_t>(out_width) * h_, 0);
    for (int y = 0; y < h_; ++y) {
      double acc = 0.0;
      const std::size_t row = static_cast<std::size_t>(y) * w_;
      for (int xi = 0; xi < w_; ++xi) {
        acc += cells_[row + static_cast<std::size_t>(xi)];
        if (xi < out_width) {
          double c = std::fabs(acc);
          if (c > 1.0) c = 1.0;
          out[static_cast<std::size_t>(y) * out_width + xi] =
              static_cast<std::uint8_t>(round_half_up(c * 255.0));
        }
      }
    }
    return out;
  }

 private:
  int w_;
  int h_;
  std::vector<double> cells_;
};

}  // namespace

struct MonoFont::Impl {
  std::string_view ttf;
  Reader r{nullptr, 0};

  int units_per_em = 0;
  int index_to_loc_format = 0;
  int num_glyphs = 0;
  int ascender_units = 0;
  int descender_units = 0;  // negative in the font
  int num_hmetrics = 0;
  std::size_t hmtx_off = 0;
  std::size_t loca_off = 0;
  std::size_t glyf_off = 0;
  std::size_t glyf_len = 0;
  Cmap4 cmap;
  std::uint16_t cell_glyph = 0;  // glyph whose advance defines the cell

  std::mutex cache_mutex;
  std::unordered_map<CacheKey, std::unique_ptr<GlyphBitmap>, CacheKeyHash> cache;

  void parse();
  std::uint16_t lookup(char32_t cp) const;
  int advance_units(std::uint16_t glyph_id) const;
  std::pair<std::size_t, std::size_t> glyph_range(std::uint16_t glyph_id) const;
  void outline(std::uint16_t glyph_id, int depth, double ox, double oy,
               double xx, double xy, double yx, double yy,
               std::vector<Contour>& out) const;
  GlyphBitmap rasterize(std::uint16_t glyph_id, int font_size) const;
};

void MonoFont::Impl::parse() {
  r = Reader{reinterpret_cast<const std::uint8_t*>(ttf.data()), ttf.size()};
  const std::uint32_t version = r.u32(0);
  require(version == 0x00010000 || version == 0x74727565, ErrorCode::Parse,
          "font: not a TrueType outline font");
  const int num_tables = r.u16(4);

  std::size_t head = 0, maxp = 0, hhea = 0, cmap_off = 0;
  for (int i = 0; i < num_tables; ++i) {
    const std::size_t rec = 12 + static_cast<std::size_t>(i) * 16;
    const std::uint32_t tag = r.u32(rec);
    const std::uint32_t off = r.u32(rec + 8);
    const std::uint32_t len = r.u32(rec + 12);
    require(off + static_cast<std::uint64_t>(len) <= ttf.size(), ErrorCode::Parse,
            "font: table out of range");
    switch (tag) {
      case 0x68656164: head = off; break;        // head
      case 0x6d617870: maxp = off; break;        // maxp
      case 0x68686561: hhea = off; break;        // hhea
      case 0x686d7478: hmtx_off = off; break;    // hmtx
      case 0x636d6170: cmap_off = off; break;    // cmap
      case 0x6c6f6361: loca_off = off; break;    // loca
      case 0x676c7966: glyf_off = off; glyf_len = len; break;  // glyf
      default: break;
    }
  }
  require(head && maxp && hhea && hmtx_off && cmap_off && loca_off && glyf_off,
          ErrorCode::Parse, "font: missing required table");

  units_per_em = r.u16(head + 18);
  require(units_per_em > 0, ErrorCode::Parse, "font: bad unitsPerEm");
  index_to_loc_format = r.i16(head + 50);
  require(index_to_loc_format == 0 || index_to_loc_format == 1, ErrorCode::Parse,
          "font: bad indexToLocFormat");

  num_glyphs = r.u16(maxp + 4);
  ascender_units = r.i16(hhea + 4);
  descender_units = r.i16(hhea + 6);
  num_hmetrics = r.u16(hhea + 34);
  require(num_hmetrics > 0, ErrorCode::Parse, "font: no horizontal metrics");

  // Pick the (3,1) BMP subtable, format 4.
  const int n_sub = r.u16(cmap_off + 2);
  std::size_t sub = 0;
  for (int i = 0; i < n_sub; ++i) {
    const std::size_t rec = cmap_off + 4 + static_cast<std::size_t>(i) * 8;
    const int platform = r.u16(rec);
    const int encoding = r.u16(rec + 2);
    const std::size_t off = cmap_off + r.u32(rec + 4);
    if ((platform == 3 && encoding == 1) || (platform == 0 && encoding == 3)) {
      if (r.u16(off) == 4) sub = off;
    }
  }
  require(sub != 0, ErrorCode::Parse, "font: no format-4 character map");

  const int seg_count = r.u16(sub + 6) / 2;
  cmap.end_code.resize(static_cast<std::size_t>(seg_count));
  cmap.start_code.resize(static_cast<std::size_t>(seg_count));
  cmap.id_delta.resize(static_cast<std::size_t>(seg_count));
  cmap.id_range_offset.resize(static_cast<std::size_t>(seg_count));
  const std::size_t end_base = sub + 14;
  const std::size_t start_base = end_base + static_cast<std::size_t>(seg_count) * 2 + 2;
  const std::size_t delta_base = start_base + static_cast<std::size_t>(seg_count) * 2;
  cmap.range_offset_base = delta_base + static_cast<std::size_t>(seg_count) * 2;
  for (int i = 0; i < seg_count; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    cmap.end_code[idx] = r.u16(end_base + idx * 2);
    cmap.start_code[idx] = r.u16(start_base + idx * 2);
    cmap.id_delta[idx] = r.i16(delta_base + idx * 2);
    cmap.id_range_offset[idx] = r.u16(cmap.range_offset_base + idx * 2);
  }

  cell_glyph = lookup(U'M');
  require(cell_glyph != 0, ErrorCode::Parse, "font: no glyph for 'M'");
}

std::uint16_t MonoFont::Impl::lookup(char32_t cp) const {
  if (cp > 0xFFFF) return 0;  // BMP map only
  const auto c = static_cast<std::uint16_t>(cp);
  for (std::size_t i = 0; i < cmap.end_code.size(); ++i) {
    if (c > cmap.end_code[i]) continue;
    if (c < cmap.start_code[i]) return 0;
    if (cmap.id_range_offset[i] == 0) {
      return static_cast<std::uint16_t>((c + cmap.id_delta[i]) & 0xFFFF);
    }
    const std::size_t glyph_addr = cmap.range_offset_base + i * 2 +
                                   cmap.id_range_offset[i] +
                                   static_cast<std::size_t>(c - cmap.start_code[i]) * 2;
    const std::uint16_t g = r.u16(glyph_addr);
    if (g == 0) return 0;
    return static_cast<std::uint16_t>((g + cmap.id_delta[i]) & 0xFFFF);
  }
  return 0;
}

int MonoFont::Impl::advance_units(std::uint16_t glyph_id) const {
  const int idx = std::min<int>(glyph_id, num_hmetrics - 1);
  return r.u16(hmtx_off + static_cast<std::size_t>(idx) * 4);
}

std::pair<std::size_t, std::size_t> MonoFont::Impl::glyph_range(
    std::uint16_t glyph_id) const {
  require(glyph_id < num_glyphs, ErrorCode::Parse, "font: glyph id out of range");
  std::size_t start = 0, end = 0;
  if (index_to_loc_format == 0) {
    start = static_cast<std::size_t>(r.u16(loca_off + static_cast<std::size_t>(glyph_id) * 2)) * 2;
    end = static_cast<std::size_t>(r.u16(loca_off + static_cast<std::size_t>(glyph_id) * 2 + 2)) * 2;
  } else {
    start = r.u32(loca_off + static_cast<std::size_t>(glyph_id) * 4);
    end = r.u32(loca_off + static_cast<std::size_t>(glyph_id) * 4 + 4);
  }
  require(start <= end && end <= glyf_len, ErrorCode::Parse, "font: bad loca entry");
  return {glyf_off + start, end - start};
}

void MonoFont::Impl::outline(std::uint16_t glyph_id, int depth, double ox,
                             double oy, double xx, double xy, double yx,
                             double yy, std::vector<Contour>& out) const {
  require(depth < 8, ErrorCode::Parse, "font: composite nesting too deep");
  const auto [off, len] = glyph_range(glyph_id);
  if (len == 0) return;  // empty glyph (e.g. space)

  const int n_contours = r.i16(off);
  if (n_contours >= 0) {
    std::vector<int> ends(static_cast<std::size_t>(n_contours));
    std::size_t p = off + 10;
    for (int i = 0; i < n_contours; ++i) {
      ends[static_cast<std::size_t>(i)] = r.u16(p);
      p += 2;
    }
    const int n_points = n_contours == 0 ? 0 : ends.back() + 1;
    const int instr_len = r.u16(p);
    p += 2 + static_cast<std::size_t>(instr_len);

    std::vector<std::uint8_t> flags;
    flags.reserve(static_cast<std::size_t>(n_points));
    while (static_cast<int>(flags.size()) < n_points) {
      const std::uint8_t f = r.u8(p++);
      flags.push_back(f);
      if (f & 0x08) {  // repeat
        int rep = r.u8(p++);
        while (rep-- > 0 && static_cast<int>(flags.size()) < n_points) flags.push_back(f);
      }
    }

    std::vector<int> xs(static_cast<std::size_t>(n_points));
    int v = 0;
    for (int i = 0; i < n_points; ++i) {
      const std::uint8_t f = flags[static_cast<std::size_t>(i)];
      if (f & 0x02) {
        const int d = r.u8(p++);
        v += (f & 0x10) ? d : -d;
      } else if (!(f & 0x10)) {
        v += r.i16(p);
        p += 2;
      }
      xs[static_cast<std::size_t>(i)] = v;
    }
    std::vector<int> ys(static_cast<std::size_t>(n_points));
    v = 0;
    for (int i = 0; i < n_points; ++i) {
      const std::uint8_t f = flags[static_cast<std::size_t>(i)];
      if (f & 0x04) {
        const int d = r.u8(p++);
        v += (f & 0x20) ? d : -d;
      } else if (!(f & 0x20)) {
        v += r.i16(p);
        p += 2;
      }
      ys[static_cast<std::size_t>(i)] = v;
    }

    int first = 0;
    for (int c = 0; c < n_contours; ++c) {
      const int last = ends[static_cast<std::size_t>(c)];
      Contour contour;
      contour.reserve(static_cast<std::size_t>(last - first + 1));
      for (int i = first; i <= last; ++i) {
        const double gx = xs[static_cast<std::size_t>(i)];
        const double gy = ys[static_cast<std::size_t>(i)];
        contour.push_back({ox + xx * gx + yx * gy, oy + xy * gx + yy * gy,
                           (flags[static_cast<std::size_t>(i)] & 0x01) != 0});
      }
      if (!contour.empty()) out.push_back(std::move(contour));
      first = last + 1;
    }
    return;
  }

  // Composite glyph: accumulate transformed components.
  std::size_t p = off + 10;
  while (true) {
    const std::uint16_t flags = r.u16(p);
    const std::uint16_t child = r.u16(p + 2);
    p += 4;
    double dx = 0, dy = 0;
    if (flags & 0x0001) {  // words
      dx = r.i16(p);
      dy = r.i16(p + 2);
      p += 4;
    } else {
      dx = static_cast<std::int8_t>(r.u8(p));
      dy = static_cast<std::int8_t>(r.u8(p + 1));
      p += 2;
    }
    require(flags & 0x0002, ErrorCode::Parse, "font: point-matching composite unsupported");
    double cxx = 1, cxy = 0, cyx = 0, cyy = 1;
    const auto f2d = [&](std::size_t at) { return r.i16(at) / 16384.0; };
    if (flags & 0x0008) {
      cxx = cyy = f2d(p);
      p += 2;
    } else if (flags & 0x0040) {
      cxx = f2d(p);
      cyy = f2d(p + 2);
      p += 4;
    } else if (flags & 0x0080) {
      cxx = f2d(p);
      cxy = f2d(p + 2);
      cyx = f2d(p + 4);
      cyy = f2d(p + 6);
      p += 8;
    }
    // Compose child transform with the incoming one.
    outline(child, depth + 1,
            ox + xx * dx + yx * dy,
            oy + xy * dx + yy * dy,
            xx * cxx + yx * cxy,
            xy * cxx + yy * cxy,
            xx * cyx + yx * cyy,
            xy * cyx + yy * cyy,
            out);
    if (!(flags & 0x0020)) break;
  }
}

GlyphBitmap MonoFont::Impl::rasterize(std::uint16_t glyph_id, int font_size) const {
  std::vector<Contour> contours;
  outline(glyph_id, 0, 0, 0, 1, 0, 0, 1, contours);

  GlyphBitmap bitmap;
  if (contours.empty()) return bitmap;

  const double scale = static_cast<double>(font_size) / units_per_em;

  // Flatten to device-space polylines (y down).
  std::vector<std::vector<std::pair<double, double>>> polys;
  polys.reserve(contours.size());
  double min_x = 1e30, min_y = 1e30, max_x = -1e30, max_y = -1e30;
  for (const Contour& contour : contours) {
    const std::size_t n = contour.size();
    if (n < 2) continue;

    // Start point: first on-curve point, or the implied midpoint when the
    // contour opens off-curve.
    std::size_t start_idx = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (contour[i].on_curve) {
        start_idx = i;
        break;
      }
    }
    OutlinePoint start;
    if (start_idx == n) {
      start = {(contour[0].x + contour[1].x) / 2.0,
               (contour[0].y + contour[1].y) / 2.0, true};
      start_idx = 0;
    } else {
      start = contour[start_idx];
      start_idx = (start_idx + 1) % n;
    }

    std::vector<std::pair<double, double>> poly;
    const auto emit = [&](double ux, double uy) {
      const double dx = ux * scale;
      const double dy = -uy * scale;
      poly.emplace_back(dx, dy);
      min_x = std::min(min_x, dx);
      min_y = std::min(min_y, dy);
      max_x = std::max(max_x, dx);
      max_y = std::max(max_y, dy);
    };
    const auto quad_to = [&](const OutlinePoint& c0, double cx, double cy,
                             double ex, double ey) {
      for (int s = 1; s <= kCurveSegments; ++s) {
        const double t = static_cast<double>(s) / kCurveSegments;
        const double mt = 1.0 - t;
        emit(mt * mt * c0.x + 2.0 * mt * t * cx + t * t * ex,
             mt * mt * c0.y + 2.0 * mt * t * cy + t * t * ey);
      }
    };

    emit(start.x, start.y);
    OutlinePoint cur = start;
    OutlinePoint pending{};  // last off-curve control, valid when have_ctrl
    bool have_ctrl = false;
    for (std::size_t k = 0; k < n; ++k) {
      const OutlinePoint& pt = contour[(start_idx + k) % n];
      if (pt.on_curve) {
        if (have_ctrl) {
          quad_to(cur, pending.x, pending.y, pt.x, pt.y);
          have_ctrl = false;
        } else {
          emit(pt.x, pt.y);
        }
        cur = pt;
      } else {
        if (have_ctrl) {
          const OutlinePoint mid{(pending.x + pt.x) / 2.0,
                                 (pending.y + pt.y) / 2.0, true};
          quad_to(cur, pending.x, pending.y, mid.x, mid.y);
          cur = mid;
        }
        pending = pt;
        have_ctrl = true;
      }
    }
    if (have_ctrl) {
      quad_to(cur, pending.x, pending.y, start.x, start.y);
    } else {
      emit(start.x, start.y);
    }
    if (poly.size() >= 2) polys.push_back(std::move(poly));
  }
  if (polys.empty()) return bitmap;

  const int left = static_cast<int>(std::floor(min_x));
  const int top = static_cast<int>(std::floor(min_y));
  const int width = static_cast<int>(std::ceil(max_x)) - left + 1;
  const int height = static_cast<int>(std::ceil(max_y)) - top + 1;

  Accumulator acc(width, height);
  for (const auto& poly : polys) {
    for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
      acc.line(poly[i].first - left, poly[i].second - top,
               poly[i + 1].first - left, poly[i + 1].second - top);
    }
  }

  bitmap.left = left;
  bitmap.top = top;
  bitmap.width = width;
  bitmap.height = height;
  bitmap.alpha = acc.resolve(width);
  return bitmap;
}

MonoFont::MonoFont(std::string_view ttf) : impl_(std::make_unique<Impl>()) {
  require(!ttf.empty(), ErrorCode::Parse, "font: empty data");
  impl_->ttf = ttf;
  impl_->parse();
}

MonoFont::~MonoFont() = default;

int MonoFont::units_per_em() const { return impl_->units_per_em; }

int MonoFont::advance_px(int font_size) const {
  require(font_size > 0, ErrorCode::Precondition, "font size must be positive");
  const double scale = static_cast<double>(font_size) / impl_->units_per_em;
  return round_half_up(impl_->advance_units(impl_->cell_glyph) * scale);
}

int MonoFont::ascent_px(int font_size) const {
  require(font_size > 0, ErrorCode::Precondition, "font size must be positive");
  const double scale = static_cast<double>(font_size) / impl_->units_per_em;
  return round_half_up(impl_->ascender_units * scale);
}

int MonoFont::descent_px(int font_size) const {
  require(font_size > 0, ErrorCode::Precondition, "font size must be positive");
  const double scale = static_cast<double>(font_size) / impl_->units_per_em;
  return round_half_up(-impl_->descender_units * scale);
}

std::uint16_t MonoFont::glyph_index(char32_t cp) const {
  return impl_->lookup(cp);
}

const GlyphBitmap& MonoFont::glyph(std::uint16_t glyph_id, int font_size, bool bold) {
  require(font_size > 0, ErrorCode::Precondition, "font size must be positive");
  const CacheKey key{glyph_id, static_cast<std::uint32_t>(font_size), bold};
  std::lock_guard<std::mutex> lock(impl_->cache_mutex);
  auto it = impl_->cache.find(key);
  if (it != impl_->cache.end()) return *it->second;

  GlyphBitmap bm = impl_->rasterize(glyph_id, font_size);
  if (bold && !bm.alpha.empty()) {
    GlyphBitmap wide;
    wide.left = bm.left;
    wide.top = bm.top;
    wide.width = bm.width + 1;
    wide.height = bm.height + 1;
    wide.alpha.assign(static_cast<std::size_t>(wide.width) * wide.height, 0);
    for (int y = 0; y < wide.height; ++y) {
      for (int x = 0; x < wide.width; ++x) {
        std::uint8_t m = 0;
        for (int dy = 0; dy <= 1; ++dy) {
          for (int dx = 0; dx <= 1; ++dx) {
            const int sx = x - dx, sy = y - dy;
            if (sx >= 0 && sy >= 0 && sx < bm.width && sy < bm.height) {
              m = std::max(m, bm.alpha[static_cast<std::size_t>(sy) * bm.width + sx]);
            }
          }
        }
        wide.alpha[static_cast<std::size_t>(y) * wide.width + x] = m;
      }
    }
    bm = std::move(wide);
  }

  auto owned = std::make_unique<GlyphBitmap>(std::move(bm));
  const GlyphBitmap& ref = *owned;
  impl_->cache.emplace(key, std::move(owned));
  return ref;
}

MonoFont& MonoFont::bundled() {
  static MonoFont font(assets::font_mono());
  return font;
}

}  // namespace codeocr
