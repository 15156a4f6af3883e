#include "core/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <thread>

#include "core/budget.hpp"
#include "core/digest.hpp"
#include "core/error.hpp"
#include "core/lexer.hpp"
#include "core/metrics.hpp"
#include "core/png_codec.hpp"
#include "core/resample.hpp"
#include "core/stats.hpp"
#include "core/taxonomy.hpp"
#include "core/text.hpp"

namespace fs = std::filesystem;

namespace codeocr {

namespace {

// Worker pool over [0, count); exceptions surface after join, lowest index
// first so reruns fail the same way.
void parallel_for(std::size_t count, int jobs,
                  const std::function<void(std::size_t)>& fn) {
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(count)));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::pair<std::size_t, std::exception_ptr>> errors;
  std::mutex errors_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(errors_mutex);
          errors.emplace_back(i, std::current_exception());
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (!errors.empty()) {
    std::sort(errors.begin(), errors.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::rethrow_exception(errors.front().second);
  }
}

std::string json_line(const nlohmann::json& doc) { return doc.dump() + "\n"; }

void write_json_file(const fs::path& path, const nlohmann::json& doc) {
  write_file(path.string(), doc.dump(2) + "\n");
}

nlohmann::json read_json_file(const fs::path& path, const std::string& hint) {
  std::string content;
  try {
    content = read_file(path.string());
  } catch (const Error&) {
    fail(ErrorCode::Io, "pipeline: missing " + path.string() + " (" + hint + ")");
  }
  try {
    return nlohmann::json::parse(content);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, "pipeline: bad JSON in " + path.string() + ": " + e.what());
  }
}

std::string style_tag(const JobSpec& job) {
  return std::string(style_name(job.render.style));
}

std::string pad3(int v) {
  std::string s = std::to_string(v);
  while (s.size() < 3) s.insert(s.begin(), '0');
  return s;
}

std::string stem(const JobSpec& job, const std::string& digest, double ratio) {
  return digest + "-" + style_tag(job) + "-k" + format_ratio(ratio);
}

fs::path base_page_path(const JobSpec& job, const std::string& digest, int page) {
  return fs::path(job.output_dir) / "pages" /
         (digest + "-" + style_tag(job) + "-base-p" + pad3(page) + ".png");
}

fs::path scaled_page_path(const JobSpec& job, const std::string& digest, double ratio,
                          int page) {
  return fs::path(job.output_dir) / "pages" /
         (stem(job, digest, ratio) + "-p" + pad3(page) + ".png");
}

fs::path plan_path(const JobSpec& job, const std::string& digest, double ratio) {
  return fs::path(job.output_dir) / "plans" / (stem(job, digest, ratio) + ".json");
}

fs::path runs_path(const JobSpec& job, const std::string& digest, double ratio) {
  return fs::path(job.output_dir) / "runs" / (stem(job, digest, ratio) + ".jsonl");
}

fs::path report_path(const JobSpec& job, const std::string& digest, double ratio) {
  return fs::path(job.output_dir) / "reports" / (stem(job, digest, ratio) + ".jsonl");
}

fs::path manifest_path(const JobSpec& job) {
  return fs::path(job.output_dir) / "manifest.json";
}

// Entries that rendered successfully: pairs of (entry json, index).
std::vector<nlohmann::json> rendered_entries(const nlohmann::json& manifest) {
  std::vector<nlohmann::json> out;
  for (const auto& e : manifest.at("entries")) {
    if (e.contains("render")) out.push_back(e);
  }
  return out;
}

std::vector<nlohmann::json> read_jsonl(const fs::path& path, const std::string& hint) {
  const std::string content = [&] {
    try {
      return read_file(path.string());
    } catch (const Error&) {
      fail(ErrorCode::Io, "pipeline: missing " + path.string() + " (" + hint + ")");
    }
  }();
  std::vector<nlohmann::json> records;
  for (std::string_view line : split_lines(content)) {
    if (line.empty()) continue;
    try {
      records.push_back(nlohmann::json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::Parse, "pipeline: bad JSONL in " + path.string() + ": " + e.what());
    }
  }
  return records;
}

}  // namespace

std::string format_ratio(double ratio) {
  if (ratio == std::floor(ratio) && std::fabs(ratio) < 1e15) {
    return std::to_string(static_cast<long long>(ratio));
  }
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), ratio);
  require(ec == std::errc(), ErrorCode::Internal, "format_ratio failed");
  return std::string(buf, ptr);
}

void JobSpec::validate() const {
  require(inputs.empty() != corpus_root.empty(), ErrorCode::Config,
          "job: exactly one of inputs or corpus_root must be set");
  require(min_lines <= max_lines, ErrorCode::Config, "job: min_lines exceeds max_lines");
  render.validate();
  require(!ratios.empty(), ErrorCode::Config, "job: at least one ratio required");
  for (double k : ratios) {
    require(k >= 1.0, ErrorCode::Config, "job: ratios must be at least 1");
  }
  require(patch > 0, ErrorCode::Config, "job: patch size must be positive");
  require(render.base_width % patch == 0 && render.base_height % patch == 0,
          ErrorCode::Config, "job: page dimensions must be divisible by the patch size");
  require(repeats >= 1, ErrorCode::Config, "job: repeats must be at least 1");
  require(jobs >= 1, ErrorCode::Config, "job: jobs must be at least 1");
  require(max_n >= 1, ErrorCode::Config, "job: max_n must be at least 1");
  require(!output_dir.empty(), ErrorCode::Config, "job: output_dir required");
  require(gateway.mode == "mock" || gateway.mode == "http", ErrorCode::Config,
          "job: gateway.mode must be 'mock' or 'http'");
  require(gateway.mock_noise >= 0.0, ErrorCode::Config,
          "job: gateway.mock_noise must not be negative");
  if (gateway.mode == "http") {
    gateway.endpoint.validate();
  }
  if (!language_override.empty() && language_override != "plain-text") {
    require(LanguageRegistry::builtin().by_name(language_override) != nullptr,
            ErrorCode::Config, "job: unknown language_override: " + language_override);
  }
}

nlohmann::json JobSpec::to_json() const {
  nlohmann::json doc = {
      {"inputs", inputs},
      {"corpus_root", corpus_root},
      {"min_lines", min_lines},
      {"max_lines", max_lines},
      {"language_override", language_override},
      {"render", render_config_to_json(render)},
      {"ratios", ratios},
      {"patch", patch},
      {"tokenizer",
       {{"kind", tokenizer.kind == TokenizerKind::Builtin ? "builtin" : "vocab"},
        {"vocab_path", tokenizer.vocab_path}}},
      {"output_dir", output_dir},
      {"repeats", repeats},
      {"jobs", jobs},
      {"max_n", max_n},
      {"instruction", instruction},
      {"gateway",
       {{"mode", gateway.mode},
        {"mock_noise", gateway.mock_noise},
        {"endpoint", gateway.endpoint.to_json()}}}};
  if (temperature) doc["temperature"] = *temperature;
  if (max_output_tokens) doc["max_output_tokens"] = *max_output_tokens;
  return doc;
}

JobSpec JobSpec::from_json(const nlohmann::json& doc) {
  JobSpec job;
  try {
    if (doc.contains("inputs")) {
      for (const auto& p : doc.at("inputs")) job.inputs.push_back(p.get<std::string>());
    }
    if (doc.contains("corpus_root")) job.corpus_root = doc.at("corpus_root").get<std::string>();
    if (doc.contains("min_lines")) job.min_lines = doc.at("min_lines").get<std::uint64_t>();
    if (doc.contains("max_lines")) job.max_lines = doc.at("max_lines").get<std::uint64_t>();
    if (doc.contains("language_override")) {
      job.language_override = doc.at("language_override").get<std::string>();
    }
    if (doc.contains("render")) job.render = render_config_from_json(doc.at("render"));
    if (doc.contains("ratios")) {
      job.ratios.clear();
      for (const auto& k : doc.at("ratios")) job.ratios.push_back(k.get<double>());
    }
    if (doc.contains("patch")) job.patch = doc.at("patch").get<int>();
    if (doc.contains("tokenizer")) {
      const auto& t = doc.at("tokenizer");
      const std::string kind = t.contains("kind") ? t.at("kind").get<std::string>() : "builtin";
      if (kind == "builtin") {
        job.tokenizer.kind = TokenizerKind::Builtin;
      } else if (kind == "vocab") {
        job.tokenizer.kind = TokenizerKind::ExternalVocab;
        job.tokenizer.vocab_path = t.at("vocab_path").get<std::string>();
      } else {
        fail(ErrorCode::Config, "job: unknown tokenizer kind: " + kind);
      }
    }
    if (doc.contains("output_dir")) job.output_dir = doc.at("output_dir").get<std::string>();
    if (doc.contains("repeats")) job.repeats = doc.at("repeats").get<int>();
    if (doc.contains("jobs")) job.jobs = doc.at("jobs").get<int>();
    if (doc.contains("max_n")) job.max_n = doc.at("max_n").get<int>();
    if (doc.contains("instruction")) job.instruction = doc.at("instruction").get<std::string>();
    if (doc.contains("temperature")) job.temperature = doc.at("temperature").get<double>();
    if (doc.contains("max_output_tokens")) {
      job.max_output_tokens = doc.at("max_output_tokens").get<int>();
    }
    if (doc.contains("gateway")) {
      const auto& g = doc.at("gateway");
      if (g.contains("mode")) job.gateway.mode = g.at("mode").get<std::string>();
      if (g.contains("mock_noise")) job.gateway.mock_noise = g.at("mock_noise").get<double>();
      if (g.contains("endpoint")) {
        job.gateway.endpoint = EndpointConfig::from_json(g.at("endpoint"));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Config, std::string("job: ") + e.what());
  }
  job.validate();
  return job;
}

nlohmann::json RenderStats::to_json() const {
  return {{"files", files},
          {"pages", pages},
          {"text_tokens", text_tokens},
          {"failures", failures},
          {"seconds", seconds},
          {"tokens_per_second", tokens_per_second}};
}

CorpusManifest stage_ingest(const JobSpec& job) {
  job.validate();
  const Tokenizer tokenizer = Tokenizer::from_spec(job.tokenizer);
  CorpusManifest manifest =
      job.corpus_root.empty()
          ? ingest_files(job.inputs, tokenizer)
          : ingest_corpus(job.corpus_root, job.min_lines, job.max_lines, tokenizer);
  if (!job.language_override.empty()) {
    for (CorpusEntry& e : manifest.entries) e.language = job.language_override;
  }

  fs::create_directories(job.output_dir);
  nlohmann::json doc = manifest.to_json();
  doc["job"] = job.to_json();
  write_json_file(manifest_path(job), doc);
  return manifest;
}

RenderStats stage_render(const JobSpec& job, bool bench_only) {
  job.validate();
  nlohmann::json manifest = read_json_file(manifest_path(job), "run ingest first");
  auto& entries = manifest.at("entries");

  if (!bench_only) {
    fs::create_directories(fs::path(job.output_dir) / "pages");
  }

  struct Failure {
    std::size_t index;
    std::string message;
  };
  std::vector<Failure> failures;
  std::mutex failures_mutex;
  std::vector<nlohmann::json> render_info(entries.size());
  std::atomic<std::uint64_t> total_pages{0};

  const auto started = std::chrono::steady_clock::now();
  parallel_for(entries.size(), job.jobs, [&](std::size_t i) {
    const auto& entry = entries.at(i);
    const std::string path = entry.at("path").get<std::string>();
    try {
      const std::string source = read_file(path);
      const RenderResult result =
          render_document(source, job.render, entry.at("language").get<std::string>());
      if (!bench_only) {
        const std::string digest = entry.at("digest").get<std::string>();
        for (std::size_t p = 0; p < result.pages.size(); ++p) {
          write_file(base_page_path(job, digest, static_cast<int>(p)).string(),
                     encode_png(result.pages[p]));
        }
      } else {
        for (const Image& page : result.pages) {
          encode_png(page);  // throughput includes encoding
        }
      }
      total_pages.fetch_add(result.pages.size());
      nlohmann::json info = {{"pages", result.pages.size()},
                             {"columns", result.manifest.columns},
                             {"rows_per_page", result.manifest.rows_per_page},
                             {"wrapped_rows", result.manifest.wrapped_rows},
                             {"clipped_lines", result.manifest.clipped_lines},
                             {"warnings", result.manifest.warnings}};
      render_info[i] = std::move(info);
    } catch (const Error& e) {
      std::lock_guard<std::mutex> lock(failures_mutex);
      failures.push_back({i, e.what()});
    }
  });
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  std::sort(failures.begin(), failures.end(),
            [](const Failure& a, const Failure& b) { return a.index < b.index; });

  RenderStats stats;
  stats.pages = total_pages.load();
  stats.seconds = seconds;
  nlohmann::json failures_json = nlohmann::json::array();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const bool failed = std::any_of(failures.begin(), failures.end(),
                                    [&](const Failure& f) { return f.index == i; });
    if (failed) continue;
    entries.at(i)["render"] = render_info[i];
    ++stats.files;
    stats.text_tokens += entries.at(i).at("text_tokens").get<std::uint64_t>();
  }
  for (const Failure& f : failures) {
    failures_json.push_back({{"path", entries.at(f.index).at("path")},
                             {"error", f.message}});
    entries.at(f.index).erase("render");
  }
  stats.failures = failures.size();
  stats.tokens_per_second =
      seconds > 0.0 ? static_cast<double>(stats.text_tokens) / seconds : 0.0;

  if (!bench_only) {
    manifest["failures"] = failures_json;
    manifest["render_stats"] = stats.to_json();
    write_json_file(manifest_path(job), manifest);
  }
  return stats;
}

void stage_plan(const JobSpec& job) {
  job.validate();
  const nlohmann::json manifest = read_json_file(manifest_path(job), "run ingest first");
  const std::vector<nlohmann::json> entries = rendered_entries(manifest);
  require(!entries.empty(), ErrorCode::Precondition,
          "pipeline: no rendered entries (run render first)");

  fs::create_directories(fs::path(job.output_dir) / "plans");
  const double aspect =
      static_cast<double>(job.render.base_width) / job.render.base_height;

  std::vector<std::pair<std::size_t, double>> tasks;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (double k : job.ratios) tasks.emplace_back(i, k);
  }
  parallel_for(tasks.size(), job.jobs, [&](std::size_t t) {
    const auto& entry = entries[tasks[t].first];
    const double ratio = tasks[t].second;
    const CompressionPlan plan = plan_compression(
        entry.at("text_tokens").get<std::uint64_t>(), ratio, job.patch,
        entry.at("render").at("pages").get<int>(), aspect);
    write_json_file(plan_path(job, entry.at("digest").get<std::string>(), ratio),
                    plan.to_json());
  });
}

void stage_compress(const JobSpec& job) {
  job.validate();
  const nlohmann::json manifest = read_json_file(manifest_path(job), "run ingest first");
  const std::vector<nlohmann::json> entries = rendered_entries(manifest);
  require(!entries.empty(), ErrorCode::Precondition,
          "pipeline: no rendered entries (run render first)");

  std::vector<std::pair<std::size_t, double>> tasks;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (double k : job.ratios) tasks.emplace_back(i, k);
  }
  parallel_for(tasks.size(), job.jobs, [&](std::size_t t) {
    const auto& entry = entries[tasks[t].first];
    const double ratio = tasks[t].second;
    const std::string digest = entry.at("digest").get<std::string>();
    const CompressionPlan plan = CompressionPlan::from_json(
        read_json_file(plan_path(job, digest, ratio), "run plan first"));
    const int pages = entry.at("render").at("pages").get<int>();
    for (int p = 0; p < pages; ++p) {
      const Image base = decode_png(read_file(base_page_path(job, digest, p).string()));
      const Image scaled =
          downsample_bilinear(base, plan.page_width_px(), plan.page_height_px());
      write_file(scaled_page_path(job, digest, ratio, p).string(), encode_png(scaled));
    }
  });
}

void stage_transcribe(const JobSpec& job) {
  job.validate();
  const nlohmann::json manifest = read_json_file(manifest_path(job), "run ingest first");
  const std::vector<nlohmann::json> entries = rendered_entries(manifest);
  require(!entries.empty(), ErrorCode::Precondition,
          "pipeline: no rendered entries (run render first)");

  fs::create_directories(fs::path(job.output_dir) / "runs");

  EndpointConfig endpoint = job.gateway.endpoint;
  if (job.gateway.mode == "mock") {
    if (endpoint.base_url.empty()) endpoint.base_url = "http://simulator.invalid";
    if (endpoint.model.empty()) endpoint.model = "simulated-vlm";
    endpoint.api_key_env.clear();  // the simulator never needs a key
  }

  std::vector<std::pair<std::size_t, double>> tasks;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (double k : job.ratios) tasks.emplace_back(i, k);
  }
  parallel_for(tasks.size(), job.jobs, [&](std::size_t t) {
    const auto& entry = entries[tasks[t].first];
    const double ratio = tasks[t].second;
    const std::string digest = entry.at("digest").get<std::string>();
    const std::string truth = read_file(entry.at("path").get<std::string>());
    const int pages = entry.at("render").at("pages").get<int>();

    std::vector<std::string> images;
    images.reserve(static_cast<std::size_t>(pages));
    for (int p = 0; p < pages; ++p) {
      images.push_back(read_file(scaled_page_path(job, digest, ratio, p).string()));
    }

    std::string lines;
    for (int run = 0; run < job.repeats; ++run) {
      GenerationOptions options;
      options.temperature = job.temperature;
      options.max_tokens = job.max_output_tokens;
      options.seed = run;

      std::unique_ptr<Transport> transport;
      if (job.gateway.mode == "mock") {
        transport = std::make_unique<SimulatorTransport>(truth, ratio * job.gateway.mock_noise);
      } else {
        transport = std::make_unique<HttpTransport>(endpoint.base_url,
                                                    endpoint.timeout_seconds);
      }
      const TranscribeResult result =
          transcribe_images(images, endpoint, *transport, options, job.instruction);
      lines += json_line({{"sample_id", digest},
                          {"path", entry.at("path")},
                          {"ratio", ratio},
                          {"run_index", run},
                          {"attempts", result.attempts},
                          {"text", result.text}});
    }
    write_file(runs_path(job, digest, ratio).string(), lines);
  });
}

void stage_score(const JobSpec& job) {
  job.validate();
  const nlohmann::json manifest = read_json_file(manifest_path(job), "run ingest first");
  const std::vector<nlohmann::json> entries = rendered_entries(manifest);
  require(!entries.empty(), ErrorCode::Precondition,
          "pipeline: no rendered entries (run render first)");

  fs::create_directories(fs::path(job.output_dir) / "reports");
  const Tokenizer tokenizer = Tokenizer::from_spec(job.tokenizer);

  std::vector<std::pair<std::size_t, double>> tasks;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (double k : job.ratios) tasks.emplace_back(i, k);
  }
  parallel_for(tasks.size(), job.jobs, [&](std::size_t t) {
    const auto& entry = entries[tasks[t].first];
    const double ratio = tasks[t].second;
    const std::string digest = entry.at("digest").get<std::string>();
    const std::string truth = read_file(entry.at("path").get<std::string>());

    // Keyword-weighted n-grams: language keywords carry extra weight.
    std::map<std::string, double> weights;
    const LanguageProfile* profile =
        LanguageRegistry::builtin().by_name(entry.at("language").get<std::string>());
    if (profile != nullptr) {
      for (const std::string& kw : profile->keywords) weights[kw] = 4.0;
    }

    std::string lines;
    for (const nlohmann::json& record :
         read_jsonl(runs_path(job, digest, ratio), "run transcribe first")) {
      const std::string text = record.at("text").get<std::string>();
      const ErrorCounts counts = classify_errors(truth, text, tokenizer);
      lines += json_line(
          {{"sample_id", digest},
           {"ratio", ratio},
           {"run_index", record.at("run_index")},
           {"cer", char_error_rate(truth, text)},
           {"es", edit_similarity(truth, text, tokenizer)},
           {"em", exact_match(truth, text, MatchNormalization::TrimTrailing)},
           {"ngram", ngram_match(truth, text, job.max_n, weights)},
           {"token_errors", counts.token_errors},
           {"line_errors", counts.line_errors},
           {"block_errors", counts.block_errors},
           {"aligned_pairs", counts.aligned_pairs}});
    }
    write_file(report_path(job, digest, ratio).string(), lines);
  });
}

nlohmann::json stage_report(const JobSpec& job) {
  job.validate();
  const nlohmann::json manifest = read_json_file(manifest_path(job), "run ingest first");
  const std::vector<nlohmann::json> entries = rendered_entries(manifest);
  require(!entries.empty(), ErrorCode::Precondition,
          "pipeline: no rendered entries (run render first)");

  nlohmann::json per_ratio;
  std::uint64_t plans_total = 0;
  std::uint64_t achieved_total = 0;

  for (double ratio : job.ratios) {
    // sample -> run -> metrics, samples in digest order.
    std::map<std::string, std::map<int, nlohmann::json>> by_sample;
    std::uint64_t achieved = 0;
    for (const auto& entry : entries) {
      const std::string digest = entry.at("digest").get<std::string>();
      const CompressionPlan plan = CompressionPlan::from_json(
          read_json_file(plan_path(job, digest, ratio), "run plan first"));
      achieved += plan.achieved_visual_tokens;
      ++plans_total;
      for (const nlohmann::json& record :
           read_jsonl(report_path(job, digest, ratio), "run score first")) {
        by_sample[digest][record.at("run_index").get<int>()] = record;
      }
    }
    achieved_total += achieved;

    // Per-run means over samples feed the run summary; EM, n-gram and
    // prevalence pool every record.
    std::vector<double> run_cer(static_cast<std::size_t>(job.repeats), 0.0);
    std::vector<double> run_es(static_cast<std::size_t>(job.repeats), 0.0);
    std::uint64_t em_hits = 0, records_total = 0;
    double ngram_sum = 0.0;
    std::vector<ErrorCounts> taxonomy;
    for (int run = 0; run < job.repeats; ++run) {
      double cer_sum = 0.0, es_sum = 0.0;
      std::size_t n = 0;
      for (const auto& [digest, runs] : by_sample) {
        const auto it = runs.find(run);
        require(it != runs.end(), ErrorCode::Precondition,
                "pipeline: missing run " + std::to_string(run) + " for sample " + digest);
        const nlohmann::json& r = it->second;
        cer_sum += r.at("cer").get<double>();
        es_sum += r.at("es").get<double>();
        em_hits += r.at("em").get<bool>() ? 1 : 0;
        ngram_sum += r.at("ngram").get<double>();
        ErrorCounts c;
        c.token_errors = r.at("token_errors").get<std::uint64_t>();
        c.line_errors = r.at("line_errors").get<std::uint64_t>();
        c.block_errors = r.at("block_errors").get<std::uint64_t>();
        taxonomy.push_back(c);
        ++records_total;
        ++n;
      }
      require(n > 0, ErrorCode::Precondition, "pipeline: no samples scored");
      run_cer[static_cast<std::size_t>(run)] = cer_sum / static_cast<double>(n);
      run_es[static_cast<std::size_t>(run)] = es_sum / static_cast<double>(n);
    }

    const RunSummary cer = summarize_runs(run_cer);
    const RunSummary es = summarize_runs(run_es);
    const Prevalence prev = prevalence(taxonomy);
    per_ratio[format_ratio(ratio)] = {
        {"cer_mean", cer.mean},
        {"cer_std", cer.stddev},
        {"es_mean", es.mean},
        {"es_std", es.stddev},
        {"em_rate", static_cast<double>(em_hits) / static_cast<double>(records_total)},
        {"ngram_mean", ngram_sum / static_cast<double>(records_total)},
        {"prevalence",
         {{"token", prev.token_pct},
          {"line", prev.line_pct},
          {"block", prev.block_pct}}},
        {"achieved_visual_tokens", achieved},
        {"records", records_total}};
  }

  std::uint64_t text_tokens_total = 0;
  for (const auto& entry : entries) {
    text_tokens_total += entry.at("text_tokens").get<std::uint64_t>();
  }

  nlohmann::json summary = {
      {"style", style_tag(job)},
      {"patch", job.patch},
      {"repeats", job.repeats},
      {"totals",
       {{"samples", entries.size()},
        {"text_tokens", text_tokens_total},
        {"plans", plans_total},
        {"achieved_visual_tokens", achieved_total}}},
      {"per_ratio", per_ratio}};
  if (manifest.contains("failures")) summary["failures"] = manifest.at("failures");

  write_json_file(fs::path(job.output_dir) / "summary.json", summary);
  return summary;
}

nlohmann::json run_pipeline(const JobSpec& job) {
  stage_ingest(job);
  stage_render(job, false);
  stage_plan(job);
  stage_compress(job);
  stage_transcribe(job);
  stage_score(job);
  return stage_report(job);
}

}  // namespace codeocr
