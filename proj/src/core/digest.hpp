#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace codeocr {

// FNV-1a over bytes; used for stable artifact names and seeds.
std::uint64_t fnv1a64(const void* data, std::size_t len);
std::uint64_t fnv1a64(std::string_view text);

// 16 lowercase hex chars.
std::string digest_hex(std::uint64_t value);
std::string digest_hex(std::string_view text);

}  // namespace codeocr
