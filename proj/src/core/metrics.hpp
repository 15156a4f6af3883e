#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "core/tokenizer.hpp"

namespace codeocr {

// Edit distance over any equality-comparable sequence, two-row DP.
template <typename T>
std::uint64_t levenshtein(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.empty()) return b.size();
  if (b.empty()) return a.size();
  std::vector<std::uint64_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::uint64_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min(std::min(prev[j] + 1, cur[j - 1] + 1), sub);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

// Codepoint edit distance divided by the truth length in codepoints. Can
// exceed 1 when the hypothesis is much longer. Empty truth is an error.
double char_error_rate(std::string_view truth, std::string_view hypothesis);

// 100 * (1 - token_edit_distance / max(token_counts)), whitespace-run tokens
// included. 100.0 when both sides are empty.
double edit_similarity(std::string_view truth, std::string_view hypothesis,
                       const Tokenizer& tokenizer);

enum class MatchNormalization { Strict, TrimTrailing };

// TrimTrailing removes trailing whitespace on each line and trailing empty
// lines before comparing.
bool exact_match(std::string_view truth, std::string_view hypothesis,
                 MatchNormalization normalization);

// Mean of plain and keyword-weighted n-gram precision scores: clipped
// modified precisions, geometric mean over n = 1..max_n (levels the
// hypothesis is too short to populate are skipped), brevity penalty. The
// weighted variant scales each n-gram by the largest weight among its
// tokens (default 1). Tokens are builtin non-whitespace tokens. Result in
// [0, 1]; identical inputs score 1; no unigram overlap scores 0.
double ngram_match(std::string_view truth, std::string_view hypothesis, int max_n,
                   const std::map<std::string, double>& keyword_weights = {});

}  // namespace codeocr
