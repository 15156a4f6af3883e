#include "core/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <set>

#include "core/digest.hpp"
#include "core/error.hpp"
#include "core/lexer.hpp"
#include "core/text.hpp"

namespace fs = std::filesystem;

namespace codeocr {

nlohmann::json CorpusManifest::to_json() const {
  nlohmann::json entries_json = nlohmann::json::array();
  for (const CorpusEntry& e : entries) {
    entries_json.push_back({{"path", e.path},
                            {"language", e.language},
                            {"line_count", e.line_count},
                            {"text_tokens", e.text_tokens},
                            {"digest", e.digest}});
  }
  return {{"entries", entries_json},
          {"filters", {{"min_lines", min_lines}, {"max_lines", max_lines}}}};
}

CorpusManifest CorpusManifest::from_json(const nlohmann::json& doc) {
  CorpusManifest m;
  try {
    m.min_lines = doc.at("filters").at("min_lines").get<std::uint64_t>();
    m.max_lines = doc.at("filters").at("max_lines").get<std::uint64_t>();
    for (const auto& e : doc.at("entries")) {
      CorpusEntry entry;
      entry.path = e.at("path").get<std::string>();
      entry.language = e.at("language").get<std::string>();
      entry.line_count = e.at("line_count").get<std::uint64_t>();
      entry.text_tokens = e.at("text_tokens").get<std::uint64_t>();
      entry.digest = e.at("digest").get<std::string>();
      m.entries.push_back(std::move(entry));
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, std::string("corpus manifest: ") + e.what());
  }
  return m;
}

namespace {

CorpusEntry make_entry(const std::string& path, const std::string& content,
                       const Tokenizer& tokenizer) {
  CorpusEntry entry;
  entry.path = path;
  entry.language = LanguageRegistry::builtin().detect(path);
  entry.line_count = count_lines(content);
  entry.text_tokens = tokenizer.count(content);
  entry.digest = digest_hex(content);
  return entry;
}

}  // namespace

CorpusManifest ingest_corpus(const std::string& root, std::uint64_t min_lines,
                             std::uint64_t max_lines, const Tokenizer& tokenizer) {
  require(min_lines <= max_lines, ErrorCode::Precondition,
          "corpus: min_lines exceeds max_lines");
  require(fs::is_directory(root), ErrorCode::Io, "corpus: not a directory: " + root);

  const LanguageRegistry& registry = LanguageRegistry::builtin();
  CorpusManifest manifest;
  manifest.min_lines = min_lines;
  manifest.max_lines = max_lines;

  std::set<std::string> seen;
  std::error_code ec;
  for (fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec), end;
       it != end; it.increment(ec)) {
    require(!ec, ErrorCode::Io, "corpus: walk failed: " + ec.message());
    if (!it->is_regular_file(ec) || ec) continue;
    const fs::path& p = it->path();
    if (registry.by_extension(p.extension().string()) == nullptr) continue;

    std::string canonical = fs::weakly_canonical(p, ec).string();
    if (ec || canonical.empty()) canonical = p.string();
    if (!seen.insert(canonical).second) continue;

    const std::string content = read_file(p.string());
    const std::uint64_t lines = count_lines(content);
    if (lines < min_lines || lines > max_lines) continue;
    manifest.entries.push_back(make_entry(p.string(), content, tokenizer));
  }

  if (manifest.entries.empty()) {
    fail(ErrorCode::EmptyCorpus,
         "corpus: no files under " + root + " matched (lines in [" +
             std::to_string(min_lines) + ", " + std::to_string(max_lines) + "])");
  }
  std::sort(manifest.entries.begin(), manifest.entries.end(),
            [](const CorpusEntry& a, const CorpusEntry& b) { return a.path < b.path; });
  return manifest;
}

CorpusManifest ingest_files(const std::vector<std::string>& files,
                            const Tokenizer& tokenizer) {
  require(!files.empty(), ErrorCode::EmptyCorpus, "corpus: no input files given");

  CorpusManifest manifest;
  manifest.min_lines = 0;
  manifest.max_lines = UINT64_MAX;

  std::set<std::string> seen;
  for (const std::string& path : files) {
    std::error_code ec;
    std::string canonical = fs::weakly_canonical(path, ec).string();
    if (ec || canonical.empty()) canonical = path;
    if (!seen.insert(canonical).second) continue;
    manifest.entries.push_back(make_entry(path, read_file(path), tokenizer));
  }
  std::sort(manifest.entries.begin(), manifest.entries.end(),
            [](const CorpusEntry& a, const CorpusEntry& b) { return a.path < b.path; });
  return manifest;
}

}  // namespace codeocr
