#include "core/png_codec.hpp"

#include <zlib.h>

#include <cstdlib>
#include <cstring>

#include "core/error.hpp"

namespace codeocr {

namespace {

constexpr unsigned char kSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};
constexpr int kZlibLevel = 6;

void put_u32(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v >> 24));
  out.push_back(static_cast<char>(v >> 16));
  out.push_back(static_cast<char>(v >> 8));
  out.push_back(static_cast<char>(v));
}

std::uint32_t get_u32(std::string_view s, std::size_t off) {
  require(off + 4 <= s.size(), ErrorCode::Parse, "png: truncated");
  return (static_cast<std::uint32_t>(static_cast<unsigned char>(s[off])) << 24) |
         (static_cast<std::uint32_t>(static_cast<unsigned char>(s[off + 1])) << 16) |
         (static_cast<std::uint32_t>(static_cast<unsigned char>(s[off + 2])) << 8) |
         static_cast<std::uint32_t>(static_cast<unsigned char>(s[off + 3]));
}

void append_chunk(std::string& out, const char type[4], const std::string& payload) {
  put_u32(out, static_cast<std::uint32_t>(payload.size()));
  const std::size_t crc_start = out.size();
  out.append(type, 4);
  out.append(payload);
  const uLong crc = crc32(crc32(0L, nullptr, 0),
                          reinterpret_cast<const Bytef*>(out.data() + crc_start),
                          static_cast<uInt>(out.size() - crc_start));
  put_u32(out, static_cast<std::uint32_t>(crc));
}

std::string zlib_deflate(const std::string& raw) {
  z_stream strm{};
  require(deflateInit(&strm, kZlibLevel) == Z_OK, ErrorCode::Internal, "png: deflate init");
  const uLong bound = deflateBound(&strm, static_cast<uLong>(raw.size()));
  std::string out(bound, '\0');
  strm.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(raw.data()));
  strm.avail_in = static_cast<uInt>(raw.size());
  strm.next_out = reinterpret_cast<Bytef*>(out.data());
  strm.avail_out = static_cast<uInt>(out.size());
  const int rc = deflate(&strm, Z_FINISH);
  deflateEnd(&strm);
  require(rc == Z_STREAM_END, ErrorCode::Internal, "png: deflate failed");
  out.resize(out.size() - strm.avail_out);
  return out;
}

std::string zlib_inflate(const std::string& compressed, std::size_t expected) {
  z_stream strm{};
  require(inflateInit(&strm) == Z_OK, ErrorCode::Internal, "png: inflate init");
  std::string out(expected, '\0');
  strm.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(compressed.data()));
  strm.avail_in = static_cast<uInt>(compressed.size());
  strm.next_out = reinterpret_cast<Bytef*>(out.data());
  strm.avail_out = static_cast<uInt>(out.size());
  const int rc = inflate(&strm, Z_FINISH);
  inflateEnd(&strm);
  require(rc == Z_STREAM_END && strm.avail_out == 0, ErrorCode::Parse,
          "png: bad compressed data");
  return out;
}

int paeth(int a, int b, int c) {
  const int p = a + b - c;
  const int pa = std::abs(p - a);
  const int pb = std::abs(p - b);
  const int pc = std::abs(p - c);
  if (pa <= pb && pa <= pc) return a;
  if (pb <= pc) return b;
  return c;
}

}  // namespace

std::string encode_png(const Image& image) {
  require(image.width > 0 && image.height > 0, ErrorCode::Precondition,
          "png: empty image");
  require(image.pixels.size() ==
              static_cast<std::size_t>(image.width) * image.height * 3,
          ErrorCode::Precondition, "png: pixel buffer size mismatch");

  const std::size_t stride = static_cast<std::size_t>(image.width) * 3;
  std::string raw;
  raw.reserve((stride + 1) * static_cast<std::size_t>(image.height));
  for (int y = 0; y < image.height; ++y) {
    raw.push_back('\0');  // filter: None
    raw.append(reinterpret_cast<const char*>(image.pixels.data() + stride * y), stride);
  }

  std::string ihdr;
  put_u32(ihdr, static_cast<std::uint32_t>(image.width));
  put_u32(ihdr, static_cast<std::uint32_t>(image.height));
  ihdr.push_back(8);   // bit depth
  ihdr.push_back(2);   // color type: truecolor
  ihdr.push_back(0);   // compression
  ihdr.push_back(0);   // filter method
  ihdr.push_back(0);   // no interlace

  std::string out;
  out.append(reinterpret_cast<const char*>(kSignature), 8);
  append_chunk(out, "IHDR", ihdr);
  append_chunk(out, "IDAT", zlib_deflate(raw));
  append_chunk(out, "IEND", "");
  return out;
}

Image decode_png(std::string_view bytes) {
  require(bytes.size() > 8 && std::memcmp(bytes.data(), kSignature, 8) == 0,
          ErrorCode::Parse, "png: bad signature");

  Image img;
  std::string idat;
  bool saw_ihdr = false, saw_iend = false;
  std::size_t off = 8;
  while (off < bytes.size() && !saw_iend) {
    const std::uint32_t len = get_u32(bytes, off);
    require(off + 12 + static_cast<std::size_t>(len) <= bytes.size(), ErrorCode::Parse,
            "png: truncated chunk");
    const std::string_view type = bytes.substr(off + 4, 4);
    const std::string_view payload = bytes.substr(off + 8, len);
    if (type == "IHDR") {
      require(len == 13, ErrorCode::Parse, "png: bad IHDR");
      img.width = static_cast<int>(get_u32(bytes, off + 8));
      img.height = static_cast<int>(get_u32(bytes, off + 12));
      require(img.width > 0 && img.height > 0, ErrorCode::Parse, "png: bad dimensions");
      const unsigned char depth = static_cast<unsigned char>(payload[8]);
      const unsigned char color = static_cast<unsigned char>(payload[9]);
      const unsigned char interlace = static_cast<unsigned char>(payload[12]);
      require(depth == 8 && color == 2 && interlace == 0, ErrorCode::Parse,
              "png: only 8-bit RGB without interlace is supported");
      saw_ihdr = true;
    } else if (type == "IDAT") {
      idat.append(payload);
    } else if (type == "IEND") {
      saw_iend = true;
    }
    off += 12 + static_cast<std::size_t>(len);
  }
  require(saw_ihdr && saw_iend && !idat.empty(), ErrorCode::Parse, "png: missing chunks");

  const std::size_t stride = static_cast<std::size_t>(img.width) * 3;
  const std::string raw =
      zlib_inflate(idat, (stride + 1) * static_cast<std::size_t>(img.height));

  img.pixels.resize(stride * static_cast<std::size_t>(img.height));
  for (int y = 0; y < img.height; ++y) {
    const auto* src = reinterpret_cast<const unsigned char*>(raw.data()) +
                      (stride + 1) * static_cast<std::size_t>(y);
    const unsigned char filter = src[0];
    ++src;
    auto* dst = img.pixels.data() + stride * static_cast<std::size_t>(y);
    const auto* prev = y > 0 ? dst - stride : nullptr;
    for (std::size_t x = 0; x < stride; ++x) {
      const int a = x >= 3 ? dst[x - 3] : 0;
      const int b = prev ? prev[x] : 0;
      const int c = (prev && x >= 3) ? prev[x - 3] : 0;
      int v = src[x];
      switch (filter) {
        case 0: break;
        case 1: v += a; break;
        case 2: v += b; break;
        case 3: v += (a + b) / 2; break;
        case 4: v += paeth(a, b, c); break;
        default: fail(ErrorCode::Parse, "png: unknown row filter");
      }
      dst[x] = static_cast<std::uint8_t>(v & 0xFF);
    }
  }
  return img;
}

}  // namespace codeocr
