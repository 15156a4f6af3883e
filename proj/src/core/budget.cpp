#include "core/budget.hpp"

#include <cmath>
#include <optional>

#include "core/error.hpp"

namespace codeocr {

std::uint64_t visual_token_count(int width, int height, int patch) {
  require(patch > 0, ErrorCode::Precondition, "budget: patch size must be positive");
  require(width > 0 && height > 0, ErrorCode::Precondition,
          "budget: image dimensions must be positive");
  require(width % patch == 0 && height % patch == 0, ErrorCode::Precondition,
          "budget: image dimensions must be divisible by the patch size");
  return static_cast<std::uint64_t>(width / patch) *
         static_cast<std::uint64_t>(height / patch);
}

nlohmann::json CompressionPlan::to_json() const {
  // The grid is uniform, so every page shares one pixel target.
  nlohmann::json targets = nlohmann::json::array();
  for (int p = 0; p < pages; ++p) {
    targets.push_back({page_width_px(), page_height_px()});
  }
  return {{"text_tokens", text_tokens},
          {"ratio", ratio},
          {"patch", patch},
          {"pages", pages},
          {"grid_width", grid_width},
          {"grid_height", grid_height},
          {"page_width_px", page_width_px()},
          {"page_height_px", page_height_px()},
          {"targets", targets},
          {"achieved_visual_tokens", achieved_visual_tokens},
          {"target_visual_tokens", target_visual_tokens}};
}

CompressionPlan CompressionPlan::from_json(const nlohmann::json& doc) {
  CompressionPlan p;
  try {
    p.text_tokens = doc.at("text_tokens").get<std::uint64_t>();
    p.ratio = doc.at("ratio").get<double>();
    p.patch = doc.at("patch").get<int>();
    p.pages = doc.at("pages").get<int>();
    p.grid_width = doc.at("grid_width").get<int>();
    p.grid_height = doc.at("grid_height").get<int>();
    p.achieved_visual_tokens = doc.at("achieved_visual_tokens").get<std::uint64_t>();
    p.target_visual_tokens = doc.at("target_visual_tokens").get<double>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, std::string("plan: ") + e.what());
  }
  return p;
}

CompressionPlan plan_compression(std::uint64_t text_tokens, double ratio, int patch,
                                 int pages, double source_aspect) {
  require(text_tokens > 0, ErrorCode::Precondition, "plan: text token count must be positive");
  require(ratio >= 1.0, ErrorCode::Precondition, "plan: ratio must be at least 1");
  require(patch > 0, ErrorCode::Precondition, "plan: patch size must be positive");
  require(pages >= 1, ErrorCode::Precondition, "plan: page count must be at least 1");
  require(source_aspect > 0.0, ErrorCode::Precondition, "plan: aspect must be positive");

  const double budget = static_cast<double>(text_tokens) / ratio;
  if (budget < static_cast<double>(pages)) {
    fail(ErrorCode::Infeasible,
         "plan: budget of " + std::to_string(budget) + " visual tokens cannot cover " +
             std::to_string(pages) + " pages");
  }
  const double per_page = budget / pages;

  // w/h must stay within [0.5, 2.0] * source_aspect; h near per_page / w.
  const double band_lo = 0.5 * source_aspect;
  const double band_hi = 2.0 * source_aspect;
  const long w_max =
      static_cast<long>(std::ceil(std::sqrt(per_page * band_hi))) +
      static_cast<long>(std::ceil(source_aspect)) + 2;

  struct Candidate {
    double diff;
    std::uint64_t total;
    double aspect_gap;  // |w/h - source_aspect|, keeps pages shaped like the source
    int landscape;      // 0 when h >= w
    int w;
    int h;
  };
  std::optional<Candidate> best;

  const auto consider = [&](long w, long h) {
    if (w < 1 || h < 1) return;
    const double aspect = static_cast<double>(w) / static_cast<double>(h);
    if (aspect < band_lo - 1e-9 || aspect > band_hi + 1e-9) return;
    const std::uint64_t total = static_cast<std::uint64_t>(pages) *
                                static_cast<std::uint64_t>(w) *
                                static_cast<std::uint64_t>(h);
    const Candidate c{std::fabs(static_cast<double>(total) - budget), total,
                      std::fabs(aspect - source_aspect), w > h ? 1 : 0,
                      static_cast<int>(w), static_cast<int>(h)};
    if (!best) {
      best = c;
      return;
    }
    const auto key = [](const Candidate& x) {
      return std::make_tuple(x.diff, x.total, x.aspect_gap, x.landscape, x.w, x.h);
    };
    if (key(c) < key(*best)) best = c;
  };

  for (long w = 1; w <= w_max; ++w) {
    const double h_lo_f = static_cast<double>(w) / band_hi;
    const double h_hi_f = static_cast<double>(w) / band_lo;
    const long h_lo = std::max(1L, static_cast<long>(std::ceil(h_lo_f - 1e-9)));
    const long h_hi = static_cast<long>(std::floor(h_hi_f + 1e-9));
    if (h_hi < h_lo) continue;
    const double ideal = per_page / static_cast<double>(w);
    for (long h : {static_cast<long>(std::floor(ideal)),
                   static_cast<long>(std::ceil(ideal)), h_lo, h_hi}) {
      consider(w, std::min(std::max(h, h_lo), h_hi));
    }
  }
  require(best.has_value(), ErrorCode::Infeasible, "plan: no feasible page grid");

  CompressionPlan plan;
  plan.text_tokens = text_tokens;
  plan.ratio = ratio;
  plan.patch = patch;
  plan.pages = pages;
  plan.grid_width = best->w;
  plan.grid_height = best->h;
  plan.achieved_visual_tokens = best->total;
  plan.target_visual_tokens = budget;
  return plan;
}

}  // namespace codeocr
