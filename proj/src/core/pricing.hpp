#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace codeocr {

// Money is held as integer nanodollars so estimates are exact decimals.
std::int64_t parse_money_nano(std::string_view text);   // "2.50" -> 2500000000
std::string format_money_nano(std::int64_t nano);       // -> "$2.50"

struct ModelRates {
  // Nanodollars per `unit_tokens` tokens. High tier applies when the input
  // token count exceeds the tier boundary; both input and output are then
  // billed at high-tier rates.
  std::int64_t input_low = 0;
  std::int64_t output_low = 0;
  std::int64_t input_high = 0;
  std::int64_t output_high = 0;
};

struct PricingTable {
  std::string currency = "USD";
  std::int64_t unit_tokens = 0;    // tokens covered by one rate, e.g. 1000000
  std::int64_t tier_boundary = 0;  // input tokens; <= boundary bills low tier
  std::map<std::string, ModelRates> models;

  static PricingTable from_json(std::string_view json_text);
  static const PricingTable& builtin();
};

struct CostEstimate {
  std::uint64_t input_tokens = 0;
  std::uint64_t output_tokens = 0;
  std::string model;
  std::string tier;  // "low" or "high"
  std::int64_t input_nano = 0;
  std::int64_t output_nano = 0;
  std::int64_t total_nano = 0;
  std::string formatted;  // total as "$x.yz"

  nlohmann::json to_json() const;
};

// Unknown model is a lookup error listing the known models.
CostEstimate estimate_cost(std::uint64_t input_tokens, std::uint64_t output_tokens,
                           const std::string& model, const PricingTable& table);

}  // namespace codeocr
