#include "core/assets.hpp"

#include <cstddef>

#define CODEOCR_ASSET(sym)                      \
  extern const unsigned char sym[];             \
  extern const std::size_t sym##_size;

CODEOCR_ASSET(codeocr_asset_font_mono)
CODEOCR_ASSET(codeocr_asset_theme_default)
CODEOCR_ASSET(codeocr_asset_lang_python)
CODEOCR_ASSET(codeocr_asset_lang_java)
CODEOCR_ASSET(codeocr_asset_lang_javascript)
CODEOCR_ASSET(codeocr_asset_lang_typescript)
CODEOCR_ASSET(codeocr_asset_lang_c)
CODEOCR_ASSET(codeocr_asset_lang_cpp)
CODEOCR_ASSET(codeocr_asset_lang_go)
CODEOCR_ASSET(codeocr_asset_pricing_default)
CODEOCR_ASSET(codeocr_asset_prompt_transcribe)
CODEOCR_ASSET(codeocr_asset_prompt_judge)

#undef CODEOCR_ASSET

namespace codeocr::assets {

namespace {
std::string_view view(const unsigned char* data, std::size_t size) {
  return {reinterpret_cast<const char*>(data), size};
}
}  // namespace

std::string_view font_mono() {
  return view(codeocr_asset_font_mono, codeocr_asset_font_mono_size);
}

std::string_view theme_default() {
  return view(codeocr_asset_theme_default, codeocr_asset_theme_default_size);
}

std::string_view pricing_default() {
  return view(codeocr_asset_pricing_default, codeocr_asset_pricing_default_size);
}

std::string_view prompt_transcribe() {
  return view(codeocr_asset_prompt_transcribe, codeocr_asset_prompt_transcribe_size);
}

std::string_view prompt_judge() {
  return view(codeocr_asset_prompt_judge, codeocr_asset_prompt_judge_size);
}

std::string_view language_profile(std::string_view name) {
  if (name == "python") return view(codeocr_asset_lang_python, codeocr_asset_lang_python_size);
  if (name == "java") return view(codeocr_asset_lang_java, codeocr_asset_lang_java_size);
  if (name == "javascript") return view(codeocr_asset_lang_javascript, codeocr_asset_lang_javascript_size);
  if (name == "typescript") return view(codeocr_asset_lang_typescript, codeocr_asset_lang_typescript_size);
  if (name == "c") return view(codeocr_asset_lang_c, codeocr_asset_lang_c_size);
  if (name == "cpp") return view(codeocr_asset_lang_cpp, codeocr_asset_lang_cpp_size);
  if (name == "go") return view(codeocr_asset_lang_go, codeocr_asset_lang_go_size);
  return {};
}

const std::vector<std::string_view>& language_profile_names() {
  static const std::vector<std::string_view> names = {
      "c", "cpp", "go", "java", "javascript", "python", "typescript"};
  return names;
}

}  // namespace codeocr::assets
