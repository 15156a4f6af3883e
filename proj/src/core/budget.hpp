#pragma once

#include <cstdint>

#include <nlohmann/json.hpp>

namespace codeocr {

// Patches per image: (width/patch) * (height/patch). Both sides must be
// divisible by the patch size.
std::uint64_t visual_token_count(int width, int height, int patch);

struct CompressionPlan {
  std::uint64_t text_tokens = 0;
  double ratio = 1.0;
  int patch = 0;
  int pages = 1;
  int grid_width = 0;   // patches per row on each page
  int grid_height = 0;  // patch rows on each page
  std::uint64_t achieved_visual_tokens = 0;  // pages * grid_width * grid_height
  double target_visual_tokens = 0.0;         // text_tokens / ratio

  int page_width_px() const { return grid_width * patch; }
  int page_height_px() const { return grid_height * patch; }

  nlohmann::json to_json() const;
  static CompressionPlan from_json(const nlohmann::json& doc);
};

// Picks uniform page dimensions (multiples of `patch`) whose total patch
// count is as close as possible to text_tokens / ratio. The page aspect
// (width/height in patches) stays within [0.5, 2.0] times `source_aspect`.
// Ties break toward fewer tokens, then the aspect nearest `source_aspect`,
// then a portrait grid, then smaller width, then smaller height, so the
// answer is a single well-defined plan.
// Infeasible when the budget is below one patch per page.
CompressionPlan plan_compression(std::uint64_t text_tokens, double ratio, int patch,
                                 int pages, double source_aspect = 1.0);

}  // namespace codeocr
