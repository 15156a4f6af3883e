#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "core/tokenizer.hpp"

namespace codeocr {

struct CorpusEntry {
  std::string path;      // as usable for reading (root-joined or as given)
  std::string language;  // profile name or "plain-text"
  std::uint64_t line_count = 0;
  std::uint64_t text_tokens = 0;
  std::string digest;    // content digest, names derived artifacts
};

struct CorpusManifest {
  std::vector<CorpusEntry> entries;  // sorted by path, deduplicated
  std::uint64_t min_lines = 0;
  std::uint64_t max_lines = 0;

  nlohmann::json to_json() const;
  static CorpusManifest from_json(const nlohmann::json& doc);
};

// Walks `root` for files whose extension matches a known language profile,
// keeps those with min_lines <= lines <= max_lines, and counts text tokens.
// An empty result is an error naming the filters.
CorpusManifest ingest_corpus(const std::string& root, std::uint64_t min_lines,
                             std::uint64_t max_lines, const Tokenizer& tokenizer);

// Explicit file list: no filtering, language detected per file, missing
// files are an error.
CorpusManifest ingest_files(const std::vector<std::string>& files,
                            const Tokenizer& tokenizer);

}  // namespace codeocr
