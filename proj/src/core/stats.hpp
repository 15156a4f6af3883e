#pragma once

#include <cstddef>
#include <span>

namespace codeocr {

struct WilcoxonResult {
  double statistic = 0.0;  // min of the positive and negative rank sums
  double p_value = 1.0;    // two-sided
  int n_used = 0;          // pairs remaining after dropping zero differences
  bool exact = false;      // exact enumeration (n <= 25) vs normal approximation
};

// Paired two-sided Wilcoxon signed-rank test. Ties in |difference| receive
// midranks. Zero differences are dropped; all-zero input is a degenerate
// error, fewer than 5 usable pairs a precondition error. For n <= 25 the
// p-value is exact: 2 * P(rank sum <= statistic) over all 2^n sign
// assignments, capped at 1. Beyond that a normal approximation with tie
// correction and continuity correction is used.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> a,
                                    std::span<const double> b);

struct RunSummary {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation, 0 for a single value
  std::size_t n = 0;
};

RunSummary summarize_runs(std::span<const double> values);

}  // namespace codeocr
