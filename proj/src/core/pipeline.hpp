#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "core/corpus.hpp"
#include "core/gateway.hpp"
#include "core/raster.hpp"
#include "core/tokenizer.hpp"

namespace codeocr {

struct PipelineGateway {
  std::string mode = "mock";     // "mock" answers offline, "http" goes out
  double mock_noise = 1.0;       // scales the simulator error rate
  EndpointConfig endpoint;       // required for http mode
};

// Everything one benchmark run needs, loadable from a JSON job file. Flag
// overrides happen before validation, so a job file plus command line always
// resolves to one concrete spec.
struct JobSpec {
  std::vector<std::string> inputs;  // explicit files, or
  std::string corpus_root;          // a directory to scan (exactly one of the two)
  std::uint64_t min_lines = 1;
  std::uint64_t max_lines = 100000;
  std::string language_override;    // applies to every entry when set

  RenderConfig render;
  std::vector<double> ratios = {1.0, 2.0, 4.0, 8.0};
  int patch = 14;
  TokenizerSpec tokenizer;

  std::string output_dir = "out";
  int repeats = 1;
  int jobs = 1;
  int max_n = 4;                    // n-gram depth for scoring
  std::string instruction;          // overrides the bundled transcription prompt
  std::optional<double> temperature;
  std::optional<int> max_output_tokens;
  PipelineGateway gateway;

  void validate() const;
  nlohmann::json to_json() const;
  static JobSpec from_json(const nlohmann::json& doc);
};

// Stage outputs live under output_dir:
//   manifest.json                         corpus entries + per-file render info
//   pages/<digest>-<style>-base-p<i>.png  full-size pages
//   plans/<digest>-<style>-k<K>.json      budget plans
//   pages/<digest>-<style>-k<K>-p<i>.png  downsampled pages
//   runs/<digest>-<style>-k<K>.jsonl      raw transcriptions per repeat
//   reports/<digest>-<style>-k<K>.jsonl   per-run metric records
//   summary.json                          aggregate statistics
// Rerunning a stage overwrites its outputs with identical bytes for
// identical inputs. Stages check their prerequisites and fail with a
// message naming the stage to run first.

CorpusManifest stage_ingest(const JobSpec& job);

struct RenderStats {
  std::uint64_t files = 0;
  std::uint64_t pages = 0;
  std::uint64_t text_tokens = 0;
  std::uint64_t failures = 0;
  double seconds = 0.0;
  double tokens_per_second = 0.0;

  nlohmann::json to_json() const;
};

// bench_only renders and encodes in memory without writing pages, for
// throughput measurement.
RenderStats stage_render(const JobSpec& job, bool bench_only = false);

void stage_plan(const JobSpec& job);
void stage_compress(const JobSpec& job);
void stage_transcribe(const JobSpec& job);
void stage_score(const JobSpec& job);
nlohmann::json stage_report(const JobSpec& job);

// All stages in order. Files that fail to render are recorded under
// "failures" in the manifest and skipped downstream.
nlohmann::json run_pipeline(const JobSpec& job);

// "4" for integral ratios, shortest decimal otherwise. Used in file names
// and summary keys.
std::string format_ratio(double ratio);

}  // namespace codeocr
