#include "core/taxonomy.hpp"

#include <algorithm>

#include "core/error.hpp"
#include "core/metrics.hpp"
#include "core/text.hpp"

namespace codeocr {

namespace {

// Indices of LCS-matched line pairs, leftmost-greedy on ties so the
// alignment is deterministic.
std::vector<std::pair<std::size_t, std::size_t>> lcs_pairs(
    const std::vector<std::string_view>& a, const std::vector<std::string_view>& b) {
  const std::size_t n = a.size(), m = b.size();
  std::vector<std::uint32_t> dp((n + 1) * (m + 1), 0);
  const auto at = [&](std::size_t i, std::size_t j) -> std::uint32_t& {
    return dp[i * (m + 1) + j];
  };
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = m; j-- > 0;) {
      at(i, j) = a[i] == b[j] ? at(i + 1, j + 1) + 1
                              : std::max(at(i + 1, j), at(i, j + 1));
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::size_t i = 0, j = 0;
  while (i < n && j < m) {
    if (a[i] == b[j] && at(i, j) == at(i + 1, j + 1) + 1) {
      pairs.emplace_back(i, j);
      ++i;
      ++j;
    } else if (at(i + 1, j) >= at(i, j + 1)) {
      ++i;
    } else {
      ++j;
    }
  }
  return pairs;
}

}  // namespace

ErrorCounts classify_errors(std::string_view truth, std::string_view hypothesis,
                            const Tokenizer& tokenizer) {
  require(!truth.empty(), ErrorCode::Precondition,
          "classify_errors: ground truth must be nonempty");

  const std::vector<std::string_view> t_lines = split_lines(truth);
  const std::vector<std::string_view> h_lines = split_lines(hypothesis);

  // Aligned (truth, hypothesis) line pairs in document order. Matched lines
  // anchor the alignment; gap lines pair up positionally, and an absent side
  // becomes an empty line.
  std::vector<std::pair<std::string_view, std::string_view>> pairs;
  pairs.reserve(std::max(t_lines.size(), h_lines.size()));
  std::size_t ti = 0, hi = 0;
  const auto flush_gap = [&](std::size_t t_end, std::size_t h_end) {
    while (ti < t_end || hi < h_end) {
      const std::string_view tl = ti < t_end ? t_lines[ti] : std::string_view{};
      const std::string_view hl = hi < h_end ? h_lines[hi] : std::string_view{};
      pairs.emplace_back(tl, hl);
      if (ti < t_end) ++ti;
      if (hi < h_end) ++hi;
    }
  };
  for (const auto& [mt, mh] : lcs_pairs(t_lines, h_lines)) {
    flush_gap(mt, mh);
    pairs.emplace_back(t_lines[mt], h_lines[mh]);
    ti = mt + 1;
    hi = mh + 1;
  }
  flush_gap(t_lines.size(), h_lines.size());

  ErrorCounts counts;
  counts.aligned_pairs = pairs.size();
  std::uint64_t run = 0;
  const auto close_run = [&] {
    if (run >= 3) ++counts.block_errors;
    run = 0;
  };
  for (const auto& [tl, hl] : pairs) {
    const std::vector<std::string_view> tt = tokenizer.token_views(tl, false);
    const std::vector<std::string_view> ht = tokenizer.token_views(hl, false);
    const std::uint64_t dist = levenshtein(tt, ht);
    counts.token_errors += dist;
    const bool line_error =
        tt.empty() ? !ht.empty() : 2 * dist >= tt.size();
    if (line_error) {
      ++counts.line_errors;
      ++run;
    } else {
      close_run();
    }
  }
  close_run();
  return counts;
}

Prevalence prevalence(std::span<const ErrorCounts> samples) {
  require(!samples.empty(), ErrorCode::Precondition,
          "prevalence: at least one sample required");
  Prevalence p;
  p.samples = samples.size();
  std::uint64_t tok = 0, line = 0, block = 0;
  for (const ErrorCounts& c : samples) {
    tok += c.has_token_error() ? 1 : 0;
    line += c.has_line_error() ? 1 : 0;
    block += c.has_block_error() ? 1 : 0;
  }
  const double n = static_cast<double>(samples.size());
  p.token_pct = 100.0 * static_cast<double>(tok) / n;
  p.line_pct = 100.0 * static_cast<double>(line) / n;
  p.block_pct = 100.0 * static_cast<double>(block) / n;
  return p;
}

}  // namespace codeocr
