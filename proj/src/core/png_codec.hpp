#pragma once

#include <string>
#include <string_view>

#include "core/image.hpp"

namespace codeocr {

// Minimal PNG writer: 8-bit RGB, no interlace, None row filter, one IDAT,
// fixed zlib parameters. The same image always yields the same bytes.
std::string encode_png(const Image& image);

// Reads what encode_png writes plus any 8-bit RGB non-interlaced PNG with
// standard row filters. Anything else is a parse error.
Image decode_png(std::string_view bytes);

}  // namespace codeocr
