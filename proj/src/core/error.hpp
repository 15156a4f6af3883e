#pragma once

#include <stdexcept>
#include <string>

namespace codeocr {

// Stable error codes; the C API maps these 1:1 to its status enum.
enum class ErrorCode : int {
  Ok = 0,
  Precondition = 1,   // caller broke a documented requirement
  Config = 2,         // bad profile, theme, pricing table, job spec, env
  Parse = 3,          // malformed input bytes (font, png, json)
  Infeasible = 4,     // no plan satisfies the requested budget
  Overflow = 5,       // content cannot fit the page geometry
  Lookup = 6,         // unknown model / language / asset
  EmptyCorpus = 7,
  Degenerate = 8,     // statistic undefined for this input
  Transport = 9,      // network failure after retries
  JudgeFormat = 10,   // judge reply not a usable score
  RequestTooLarge = 11,
  Io = 12,
  Internal = 13,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool ok, ErrorCode code, const std::string& message) {
  if (!ok) fail(code, message);
}

}  // namespace codeocr
