#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "core/tokenizer.hpp"

namespace codeocr {

// Hierarchical error counts for one transcription. Truth and hypothesis
// lines are aligned by longest common subsequence over exactly equal lines;
// unmatched lines pair up in order, leftovers pair with an empty line.
//   token errors: token edit distance per aligned pair, non-whitespace
//                 tokens only, summed
//   line errors:  aligned pairs where at least half of the truth line's
//                 tokens differ (an empty side against a nonempty one
//                 always counts)
//   block errors: maximal runs of 3 or more consecutive line errors,
//                 counted once per run
// A block error therefore implies at least 3 line errors, and a line error
// implies at least one token error.
struct ErrorCounts {
  std::uint64_t token_errors = 0;
  std::uint64_t line_errors = 0;
  std::uint64_t block_errors = 0;
  std::uint64_t aligned_pairs = 0;

  bool has_token_error() const { return token_errors > 0; }
  bool has_line_error() const { return line_errors > 0; }
  bool has_block_error() const { return block_errors > 0; }
};

// Truth must be nonempty.
ErrorCounts classify_errors(std::string_view truth, std::string_view hypothesis,
                            const Tokenizer& tokenizer);

// Share of samples exhibiting each error class, in percent.
struct Prevalence {
  double token_pct = 0.0;
  double line_pct = 0.0;
  double block_pct = 0.0;
  std::uint64_t samples = 0;
};

Prevalence prevalence(std::span<const ErrorCounts> samples);

}  // namespace codeocr
