#include <doctest/doctest.h>

#include <limits>
#include <random>

#include "core/budget.hpp"
#include "core/error.hpp"
#include "support/oracles.hpp"

using namespace codeocr;

TEST_CASE("visual token count at the default page size") {
  CHECK(visual_token_count(2240, 2240, 14) == 25600);
  CHECK(visual_token_count(2240, 2240, 16) == 19600);
  CHECK(visual_token_count(14, 14, 14) == 1);
  CHECK(visual_token_count(224, 448, 14) == 16 * 32);
}

TEST_CASE("visual token count preconditions") {
  CHECK_THROWS_AS(visual_token_count(2241, 2240, 14), Error);
  CHECK_THROWS_AS(visual_token_count(0, 2240, 14), Error);
  CHECK_THROWS_AS(visual_token_count(2240, 2240, 0), Error);
  try {
    visual_token_count(2241, 2240, 14);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Precondition);
  }
}

TEST_CASE("plan fixture: 440 tokens at ratio 4 hits the budget exactly") {
  const CompressionPlan plan = plan_compression(440, 4.0, 16, 1);
  CHECK(plan.grid_width == 10);
  CHECK(plan.grid_height == 11);
  CHECK(plan.achieved_visual_tokens == 110);
  CHECK(plan.target_visual_tokens == doctest::Approx(110.0));
  CHECK(plan.page_width_px() == 160);
  CHECK(plan.page_height_px() == 176);
}

TEST_CASE("plan fixture: 110 tokens at ratio 4 lands within one row") {
  // Budget 27.5; nearest in-band grids: 4x7 = 28.
  const CompressionPlan plan = plan_compression(110, 4.0, 14, 1);
  CHECK(plan.grid_width == 4);
  CHECK(plan.grid_height == 7);
  CHECK(plan.achieved_visual_tokens == 28);
}

TEST_CASE("plan fixture: ratio 1 keeps every token") {
  const CompressionPlan plan = plan_compression(25600, 1.0, 14, 1);
  CHECK(plan.grid_width == 160);
  CHECK(plan.grid_height == 160);
  CHECK(plan.achieved_visual_tokens == 25600);
}

TEST_CASE("plan spreads the budget across pages") {
  const CompressionPlan plan = plan_compression(6400, 1.0, 14, 4);
  CHECK(plan.pages == 4);
  CHECK(plan.grid_width == 40);
  CHECK(plan.grid_height == 40);
  CHECK(plan.achieved_visual_tokens == 6400);
}

TEST_CASE("plan respects the aspect band") {
  for (double aspect : {0.5, 1.0, 2.0}) {
    for (std::uint64_t tokens : {50ull, 777ull, 12345ull}) {
      const CompressionPlan plan = plan_compression(tokens, 2.0, 14, 1, aspect);
      const double grid_aspect =
          static_cast<double>(plan.grid_width) / plan.grid_height;
      CHECK(grid_aspect >= 0.5 * aspect - 1e-9);
      CHECK(grid_aspect <= 2.0 * aspect + 1e-9);
    }
  }
}

TEST_CASE("plan infeasible when the budget is below one patch per page") {
  CHECK_THROWS_AS(plan_compression(10, 11.0, 14, 1), Error);
  CHECK_THROWS_AS(plan_compression(30, 8.0, 14, 4), Error);
  try {
    plan_compression(10, 11.0, 14, 1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Infeasible);
  }
  // Exactly one token per page is fine.
  const CompressionPlan plan = plan_compression(4, 4.0, 14, 1);
  CHECK(plan.achieved_visual_tokens == 1);
}

TEST_CASE("plan preconditions") {
  CHECK_THROWS_AS(plan_compression(0, 1.0, 14, 1), Error);
  CHECK_THROWS_AS(plan_compression(100, 0.5, 14, 1), Error);
  CHECK_THROWS_AS(plan_compression(100, 1.0, 14, 0), Error);
  CHECK_THROWS_AS(plan_compression(100, 1.0, 14, 1, -1.0), Error);
}

TEST_CASE("plan agrees with the exhaustive oracle") {
  std::mt19937_64 rng(2024);
  const double ratios[] = {1.0, 2.0, 3.5, 4.0, 8.0, 16.0};
  const double aspects[] = {0.5, 1.0, 2.0};
  for (int round = 0; round < 300; ++round) {
    const std::uint64_t tokens = 1 + rng() % 60000;
    const double ratio = ratios[rng() % 6];
    const int pages = 1 + static_cast<int>(rng() % 4);
    const double aspect = aspects[rng() % 3];
    CAPTURE(tokens);
    CAPTURE(ratio);
    CAPTURE(pages);
    CAPTURE(aspect);

    const auto expected = testsupport::oracle_plan(tokens, ratio, pages, aspect);
    if (!expected) {
      CHECK_THROWS_AS(plan_compression(tokens, ratio, 14, pages, aspect), Error);
      continue;
    }
    const CompressionPlan got = plan_compression(tokens, ratio, 14, pages, aspect);
    CHECK(got.grid_width == expected->grid_width);
    CHECK(got.grid_height == expected->grid_height);
    CHECK(got.achieved_visual_tokens == expected->total);
  }
}

TEST_CASE("achieved tokens never grow when the ratio grows") {
  std::mt19937_64 rng(71);
  for (int round = 0; round < 200; ++round) {
    const std::uint64_t tokens = 16 + rng() % 40000;
    const int patch = (rng() % 2 == 0) ? 14 : 16;
    std::uint64_t previous = std::numeric_limits<std::uint64_t>::max();
    for (double ratio : {1.0, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0, 16.0}) {
      const CompressionPlan plan = plan_compression(tokens, ratio, patch, 1);
      CHECK(plan.achieved_visual_tokens <= previous);
      previous = plan.achieved_visual_tokens;
    }
  }
}

TEST_CASE("plan json round-trips") {
  const CompressionPlan plan = plan_compression(440, 4.0, 16, 2);
  const CompressionPlan back = CompressionPlan::from_json(plan.to_json());
  CHECK(back.grid_width == plan.grid_width);
  CHECK(back.grid_height == plan.grid_height);
  CHECK(back.achieved_visual_tokens == plan.achieved_visual_tokens);
  CHECK(back.ratio == plan.ratio);
  CHECK(back.pages == plan.pages);
  CHECK(back.patch == plan.patch);

  // One pixel target per page, all equal to the grid scaled by the patch.
  const auto doc = plan.to_json();
  REQUIRE(doc.at("targets").size() == 2);
  for (const auto& target : doc.at("targets")) {
    CHECK(target[0] == plan.page_width_px());
    CHECK(target[1] == plan.page_height_px());
    CHECK(target[0].get<int>() % plan.patch == 0);
    CHECK(target[1].get<int>() % plan.patch == 0);
  }
}
