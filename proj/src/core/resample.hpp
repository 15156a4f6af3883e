#pragma once

#include "core/image.hpp"

namespace codeocr {

// Area-weighted bilinear reduction: separable triangle filter whose support
// scales with the shrink factor, horizontal pass then vertical, all in
// double precision with a single half-up quantization at the end. Target
// dimensions must not exceed the source (this is a downsampler; identity at
// equal size).
Image downsample_bilinear(const Image& src, int target_width, int target_height);

}  // namespace codeocr
