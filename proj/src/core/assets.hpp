#pragma once

#include <string_view>
#include <vector>

namespace codeocr::assets {

// Assets compiled into the library so rendering needs no files on disk.
std::string_view font_mono();          // DejaVu Sans Mono, TTF bytes
std::string_view theme_default();      // default light theme, JSON
std::string_view pricing_default();    // default pricing table, JSON
std::string_view prompt_transcribe();  // transcription instruction
std::string_view prompt_judge();       // pairwise judge instruction template

// Built-in language profiles, JSON. Unknown name returns empty view.
std::string_view language_profile(std::string_view name);

// Names of all built-in language profiles.
const std::vector<std::string_view>& language_profile_names();

}  // namespace codeocr::assets
