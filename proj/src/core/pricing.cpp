#include "core/pricing.hpp"

#include "core/assets.hpp"
#include "core/error.hpp"

namespace codeocr {

std::int64_t parse_money_nano(std::string_view text) {
  require(!text.empty(), ErrorCode::Config, "money: empty amount");
  std::size_t i = 0;
  std::int64_t whole = 0;
  bool any = false;
  while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
    whole = whole * 10 + (text[i] - '0');
    require(whole <= 9000000000LL, ErrorCode::Config, "money: amount too large");
    ++i;
    any = true;
  }
  std::int64_t frac = 0;
  int frac_digits = 0;
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
      require(frac_digits < 9, ErrorCode::Config,
              "money: more than 9 decimal places: " + std::string(text));
      frac = frac * 10 + (text[i] - '0');
      ++frac_digits;
      ++i;
      any = true;
    }
  }
  require(any && i == text.size(), ErrorCode::Config,
          "money: malformed amount: " + std::string(text));
  for (int k = frac_digits; k < 9; ++k) frac *= 10;
  return whole * 1000000000LL + frac;
}

std::string format_money_nano(std::int64_t nano) {
  require(nano >= 0, ErrorCode::Precondition, "money: negative amount");
  const std::int64_t whole = nano / 1000000000LL;
  std::int64_t frac = nano % 1000000000LL;
  std::string digits(9, '0');
  for (int k = 8; k >= 0; --k) {
    digits[static_cast<std::size_t>(k)] = static_cast<char>('0' + frac % 10);
    frac /= 10;
  }
  // At least two decimal places; beyond that only what is nonzero.
  std::size_t keep = 9;
  while (keep > 2 && digits[keep - 1] == '0') --keep;
  return "$" + std::to_string(whole) + "." + digits.substr(0, keep);
}

namespace {

std::int64_t rate_from_json(const nlohmann::json& value, const std::string& where) {
  require(value.is_string(), ErrorCode::Config,
          "pricing: " + where + " must be a decimal string");
  return parse_money_nano(value.get<std::string>());
}

}  // namespace

PricingTable PricingTable::from_json(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Config, std::string("pricing: invalid JSON: ") + e.what());
  }

  PricingTable t;
  try {
    t.currency = doc.at("currency").get<std::string>();
    t.unit_tokens = doc.at("unit_tokens").get<std::int64_t>();
    t.tier_boundary = doc.at("tier_boundary").get<std::int64_t>();
    for (const auto& [name, rates] : doc.at("models").items()) {
      ModelRates m;
      m.input_low = rate_from_json(rates.at("input_low"), name + ".input_low");
      m.output_low = rate_from_json(rates.at("output_low"), name + ".output_low");
      if (rates.contains("input_high")) {
        m.input_high = rate_from_json(rates.at("input_high"), name + ".input_high");
        m.output_high = rate_from_json(rates.at("output_high"), name + ".output_high");
      } else {
        m.input_high = m.input_low;
        m.output_high = m.output_low;
      }
      t.models[name] = m;
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Config, std::string("pricing: ") + e.what());
  }

  require(t.unit_tokens > 0, ErrorCode::Config, "pricing: unit_tokens must be positive");
  require(t.tier_boundary >= 0, ErrorCode::Config,
          "pricing: tier_boundary must not be negative");
  require(!t.models.empty(), ErrorCode::Config, "pricing: no models");
  for (const auto& [name, m] : t.models) {
    require(m.input_high >= m.input_low && m.output_high >= m.output_low,
            ErrorCode::Config, "pricing: high tier below low tier for " + name);
    // Exactness for every token count requires a whole number of nanodollars
    // per token.
    for (std::int64_t r : {m.input_low, m.output_low, m.input_high, m.output_high}) {
      require(r >= 0, ErrorCode::Config, "pricing: negative rate for " + name);
      require(r % t.unit_tokens == 0, ErrorCode::Config,
              "pricing: rate for " + name + " is finer than one nanodollar per token");
    }
  }
  return t;
}

const PricingTable& PricingTable::builtin() {
  static const PricingTable table = from_json(assets::pricing_default());
  return table;
}

nlohmann::json CostEstimate::to_json() const {
  return {{"input_tokens", input_tokens},
          {"output_tokens", output_tokens},
          {"model", model},
          {"tier", tier},
          {"input_nanodollars", input_nano},
          {"output_nanodollars", output_nano},
          {"total_nanodollars", total_nano},
          {"total", formatted}};
}

CostEstimate estimate_cost(std::uint64_t input_tokens, std::uint64_t output_tokens,
                           const std::string& model, const PricingTable& table) {
  const auto it = table.models.find(model);
  if (it == table.models.end()) {
    std::string known;
    for (const auto& [name, rates] : table.models) {
      if (!known.empty()) known += ", ";
      known += name;
    }
    fail(ErrorCode::Lookup, "pricing: unknown model '" + model + "' (known: " + known + ")");
  }
  const ModelRates& m = it->second;

  CostEstimate est;
  est.input_tokens = input_tokens;
  est.output_tokens = output_tokens;
  est.model = model;
  const bool high = input_tokens > static_cast<std::uint64_t>(table.tier_boundary);
  est.tier = high ? "high" : "low";
  const std::int64_t in_rate = high ? m.input_high : m.input_low;
  const std::int64_t out_rate = high ? m.output_high : m.output_low;

  const auto charge = [&](std::uint64_t tokens, std::int64_t rate) -> std::int64_t {
    const __int128 product = static_cast<__int128>(tokens) * rate;
    const __int128 nano = product / table.unit_tokens;
    require(product % table.unit_tokens == 0, ErrorCode::Internal,
            "pricing: non-exact charge");
    require(nano <= INT64_MAX, ErrorCode::Precondition, "pricing: cost overflow");
    return static_cast<std::int64_t>(nano);
  };
  est.input_nano = charge(input_tokens, in_rate);
  est.output_nano = charge(output_tokens, out_rate);
  est.total_nano = est.input_nano + est.output_nano;
  est.formatted = format_money_nano(est.total_nano);
  return est;
}

}  // namespace codeocr
