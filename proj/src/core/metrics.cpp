#include "core/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "core/error.hpp"
#include "core/text.hpp"

namespace codeocr {

double char_error_rate(std::string_view truth, std::string_view hypothesis) {
  require(!truth.empty(), ErrorCode::Precondition,
          "char_error_rate: ground truth must be nonempty");
  const std::vector<char32_t> t = decode_utf8(truth);
  const std::vector<char32_t> h = decode_utf8(hypothesis);
  return static_cast<double>(levenshtein(t, h)) / static_cast<double>(t.size());
}

double edit_similarity(std::string_view truth, std::string_view hypothesis,
                       const Tokenizer& tokenizer) {
  const std::vector<std::string_view> t = tokenizer.token_views(truth, true);
  const std::vector<std::string_view> h = tokenizer.token_views(hypothesis, true);
  if (t.empty() && h.empty()) return 100.0;
  const std::uint64_t dist = levenshtein(t, h);
  const std::uint64_t denom = std::max(t.size(), h.size());
  return 100.0 * (1.0 - static_cast<double>(dist) / static_cast<double>(denom));
}

namespace {

std::string trim_trailing(std::string_view text) {
  std::vector<std::string_view> lines = split_lines(text);
  std::vector<std::string_view> kept;
  kept.reserve(lines.size());
  for (std::string_view line : lines) {
    std::size_t end = line.size();
    while (end > 0) {
      const char c = line[end - 1];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f') {
        --end;
      } else {
        break;
      }
    }
    kept.push_back(line.substr(0, end));
  }
  while (!kept.empty() && kept.back().empty()) kept.pop_back();
  std::string out;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (i > 0) out.push_back('\n');
    out.append(kept[i]);
  }
  return out;
}

}  // namespace

bool exact_match(std::string_view truth, std::string_view hypothesis,
                 MatchNormalization normalization) {
  if (normalization == MatchNormalization::Strict) return truth == hypothesis;
  return trim_trailing(truth) == trim_trailing(hypothesis);
}

namespace {

// n-gram key: tokens joined with an unlikely separator byte.
std::string ngram_key(const std::vector<std::string_view>& tokens, std::size_t at,
                      int n) {
  std::string key;
  for (int k = 0; k < n; ++k) {
    if (k > 0) key.push_back('\x1f');
    key.append(tokens[at + static_cast<std::size_t>(k)]);
  }
  return key;
}

double ngram_weight(const std::vector<std::string_view>& tokens, std::size_t at,
                    int n, const std::map<std::string, double>& weights) {
  double w = 1.0;
  for (int k = 0; k < n; ++k) {
    const auto it = weights.find(std::string(tokens[at + static_cast<std::size_t>(k)]));
    if (it != weights.end()) w = std::max(w, it->second);
  }
  return w;
}

}  // namespace

double ngram_match(std::string_view truth, std::string_view hypothesis, int max_n,
                   const std::map<std::string, double>& keyword_weights) {
  require(max_n >= 1, ErrorCode::Precondition, "ngram_match: max_n must be at least 1");

  const Tokenizer tok = Tokenizer::builtin();
  const std::vector<std::string_view> t = tok.token_views(truth, false);
  const std::vector<std::string_view> h = tok.token_views(hypothesis, false);
  if (t.empty() && h.empty()) return 1.0;
  if (t.empty() || h.empty()) return 0.0;

  double log_plain = 0.0, log_weighted = 0.0;
  int levels = 0;
  bool zero_plain = false, zero_weighted = false;
  for (int n = 1; n <= max_n; ++n) {
    if (h.size() < static_cast<std::size_t>(n)) break;  // nothing to score
    std::unordered_map<std::string, std::uint64_t> truth_counts;
    if (t.size() >= static_cast<std::size_t>(n)) {
      for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= t.size(); ++i) {
        ++truth_counts[ngram_key(t, i, n)];
      }
    }
    std::unordered_map<std::string, std::uint64_t> hyp_counts;
    for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= h.size(); ++i) {
      ++hyp_counts[ngram_key(h, i, n)];
    }

    double matched = 0.0, total = 0.0;
    double matched_w = 0.0, total_w = 0.0;
    for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= h.size(); ++i) {
      const std::string key = ngram_key(h, i, n);
      const double w = ngram_weight(h, i, n, keyword_weights);
      total += 1.0;
      total_w += w;
      auto it = truth_counts.find(key);
      if (it != truth_counts.end() && it->second > 0) {
        --it->second;  // clip: each truth n-gram matches at most once
        matched += 1.0;
        matched_w += w;
      }
    }
    ++levels;
    if (matched == 0.0) {
      zero_plain = true;
      zero_weighted = true;
    } else {
      log_plain += std::log(matched / total);
      log_weighted += std::log(matched_w / total_w);
    }
  }
  if (levels == 0) return 0.0;

  const double c = static_cast<double>(h.size());
  const double r = static_cast<double>(t.size());
  const double bp = c >= r ? 1.0 : std::exp(1.0 - r / c);

  const double plain = zero_plain ? 0.0 : bp * std::exp(log_plain / levels);
  const double weighted = zero_weighted ? 0.0 : bp * std::exp(log_weighted / levels);
  return 0.5 * (plain + weighted);
}

}  // namespace codeocr
