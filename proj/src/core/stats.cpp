#include "core/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "core/error.hpp"

namespace codeocr {

WilcoxonResult wilcoxon_signed_rank(std::span<const double> a,
                                    std::span<const double> b) {
  require(a.size() == b.size(), ErrorCode::Precondition,
          "wilcoxon: both samples must have the same length");

  std::vector<double> diffs;
  diffs.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    if (d != 0.0) diffs.push_back(d);
  }
  require(a.empty() || !diffs.empty(), ErrorCode::Degenerate,
          "wilcoxon: all differences are zero");
  require(diffs.size() >= 5, ErrorCode::Precondition,
          "wilcoxon: at least 5 nonzero differences required");

  const std::size_t n = diffs.size();

  // Midranks of |d|, doubled so they stay integral.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return std::fabs(diffs[x]) < std::fabs(diffs[y]);
  });
  std::vector<std::uint64_t> rank2(n, 0);
  std::vector<std::size_t> tie_sizes;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && std::fabs(diffs[order[j]]) == std::fabs(diffs[order[i]])) ++j;
    // positions i+1 .. j (1-based); midrank*2 = (i+1) + j
    const std::uint64_t mid2 = static_cast<std::uint64_t>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) rank2[order[k]] = mid2;
    tie_sizes.push_back(j - i);
    i = j;
  }

  std::uint64_t w_plus2 = 0, total2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    total2 += rank2[i];
    if (diffs[i] > 0.0) w_plus2 += rank2[i];
  }
  const std::uint64_t w_minus2 = total2 - w_plus2;
  const std::uint64_t stat2 = std::min(w_plus2, w_minus2);

  WilcoxonResult result;
  result.statistic = static_cast<double>(stat2) / 2.0;
  result.n_used = static_cast<int>(n);

  if (n <= 25) {
    // Exact distribution of the rank sum over all sign assignments: count of
    // subsets reaching each doubled sum.
    std::vector<std::uint64_t> count(total2 + 1, 0);
    count[0] = 1;
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t r = rank2[i];
      for (std::uint64_t s = total2; s + 1 > r; --s) {
        count[s] += count[s - r];
      }
    }
    std::uint64_t at_or_below = 0;
    for (std::uint64_t s = 0; s <= stat2; ++s) at_or_below += count[s];
    const double denom = std::ldexp(1.0, static_cast<int>(n));  // 2^n
    result.p_value = std::min(1.0, 2.0 * static_cast<double>(at_or_below) / denom);
    result.exact = true;
    return result;
  }

  const double dn = static_cast<double>(n);
  const double mean = dn * (dn + 1.0) / 4.0;
  double variance = dn * (dn + 1.0) * (2.0 * dn + 1.0) / 24.0;
  for (std::size_t t : tie_sizes) {
    const double dt = static_cast<double>(t);
    variance -= (dt * dt * dt - dt) / 48.0;
  }
  require(variance > 0.0, ErrorCode::Degenerate, "wilcoxon: zero variance");

  const double w_plus = static_cast<double>(w_plus2) / 2.0;
  double z = 0.0;
  if (w_plus > mean) {
    z = (w_plus - mean - 0.5) / std::sqrt(variance);
  } else if (w_plus < mean) {
    z = (w_plus - mean + 0.5) / std::sqrt(variance);
  }
  result.p_value = std::min(1.0, std::erfc(std::fabs(z) / std::sqrt(2.0)));
  result.exact = false;
  return result;
}

RunSummary summarize_runs(std::span<const double> values) {
  require(!values.empty(), ErrorCode::Precondition,
          "summarize_runs: at least one value required");
  RunSummary s;
  s.n = values.size();
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) {
      const double d = v - s.mean;
      ss += d * d;
    }
    s.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return s;
}

}  // namespace codeocr
