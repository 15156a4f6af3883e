// Command-line front end. Every subcommand reads an optional job file, layers
// flag overrides on top, and hands the merged job to the library; the library
// owns all validation.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "codeocr.h"

using nlohmann::json;

namespace {

struct ApiError {
  int status;
  std::string message;
};

[[noreturn]] void die(const ApiError& e) {
  std::cerr << "error: " << e.message << " [" << codeocr_status_name(e.status) << "]\n";
  std::exit(1);
}

// Takes the slot, not the value: the message is only there after the API
// call returns, and argument evaluation order would read it too early.
void check(int status, char** error) {
  if (status == CODEOCR_OK) return;
  ApiError e{status, *error != nullptr ? *error : "unknown error"};
  codeocr_string_free(*error);
  *error = nullptr;
  die(e);
}

std::string take_string(char* s) {
  std::string out = s != nullptr ? s : "";
  codeocr_string_free(s);
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read " << path << " [io]\n";
    std::exit(1);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Flag values land here; only flags the user actually passed override the
// job file.
struct Overrides {
  std::vector<std::string> inputs;
  std::string corpus_root;
  std::optional<std::uint64_t> min_lines, max_lines;
  std::string language;
  std::string output_dir;
  std::vector<double> ratios;
  std::optional<int> patch;
  std::string style;
  std::optional<int> font_size;
  std::optional<int> base_width, base_height;
  std::optional<int> tab_width;
  std::optional<bool> wrap;
  std::string vocab_path;
  std::optional<int> repeats, jobs, max_n;
  std::string instruction_file;
  std::optional<double> temperature;
  std::optional<int> max_output_tokens;
  std::string gateway_mode;
  std::optional<double> mock_noise;
  std::string base_url, model, api_key_env;
  std::optional<double> timeout, backoff;
  std::optional<int> max_retries;
};

struct JobArgs {
  std::string job_file;
  Overrides o;
};

void add_job_options(CLI::App* cmd, JobArgs& args) {
  cmd->add_option("--job", args.job_file, "job file (JSON)")->check(CLI::ExistingFile);
  cmd->add_option("--input", args.o.inputs, "input source file (repeatable)");
  cmd->add_option("--corpus-root", args.o.corpus_root, "directory to scan for sources");
  cmd->add_option("--min-lines", args.o.min_lines, "corpus filter: minimum line count");
  cmd->add_option("--max-lines", args.o.max_lines, "corpus filter: maximum line count");
  cmd->add_option("--language", args.o.language, "language profile for every input");
  cmd->add_option("--output-dir", args.o.output_dir, "artifact directory");
  cmd->add_option("--ratio", args.o.ratios, "compression ratio (repeatable)");
  cmd->add_option("--patch", args.o.patch, "vision patch size (14 or 16)");
  cmd->add_option("--style", args.o.style, "render style: plain, bold, highlight");
  cmd->add_option("--font-size", args.o.font_size, "font size in pixels");
  cmd->add_option("--page-width", args.o.base_width, "page width in pixels");
  cmd->add_option("--page-height", args.o.base_height, "page height in pixels");
  cmd->add_option("--tab-width", args.o.tab_width, "spaces per tab");
  cmd->add_flag("--wrap,!--no-wrap", args.o.wrap, "wrap long lines (default on)");
  cmd->add_option("--vocab", args.o.vocab_path, "tokenizer vocabulary file");
  cmd->add_option("--repeats", args.o.repeats, "transcription runs per sample");
  cmd->add_option("--jobs", args.o.jobs, "parallel worker count");
  cmd->add_option("--max-n", args.o.max_n, "n-gram depth for scoring");
  cmd->add_option("--instruction-file", args.o.instruction_file,
                  "file with the transcription instruction");
  cmd->add_option("--temperature", args.o.temperature, "sampling temperature");
  cmd->add_option("--max-output-tokens", args.o.max_output_tokens,
                  "completion token cap");
  cmd->add_option("--gateway", args.o.gateway_mode, "gateway mode: mock or http");
  cmd->add_option("--mock-noise", args.o.mock_noise, "mock gateway noise level");
  cmd->add_option("--base-url", args.o.base_url, "model endpoint base URL");
  cmd->add_option("--model", args.o.model, "model name");
  cmd->add_option("--api-key-env", args.o.api_key_env,
                  "environment variable holding the API key");
  cmd->add_option("--timeout", args.o.timeout, "request timeout in seconds");
  cmd->add_option("--max-retries", args.o.max_retries, "retry budget");
  cmd->add_option("--backoff", args.o.backoff, "retry backoff base in seconds");
}

std::string merge_job(const JobArgs& args) {
  json job = json::object();
  if (!args.job_file.empty()) {
    try {
      job = json::parse(slurp(args.job_file));
    } catch (const json::exception& e) {
      std::cerr << "error: " << args.job_file << ": " << e.what() << " [parse]\n";
      std::exit(1);
    }
  }
  const Overrides& o = args.o;
  if (!o.inputs.empty()) job["inputs"] = o.inputs;
  if (!o.corpus_root.empty()) job["corpus_root"] = o.corpus_root;
  if (o.min_lines) job["min_lines"] = *o.min_lines;
  if (o.max_lines) job["max_lines"] = *o.max_lines;
  if (!o.language.empty()) job["language_override"] = o.language;
  if (!o.output_dir.empty()) job["output_dir"] = o.output_dir;
  if (!o.ratios.empty()) job["ratios"] = o.ratios;
  if (o.patch) job["patch"] = *o.patch;
  if (!o.style.empty()) job["render"]["style"] = o.style;
  if (o.font_size) job["render"]["font_size"] = *o.font_size;
  if (o.base_width) job["render"]["base_width"] = *o.base_width;
  if (o.base_height) job["render"]["base_height"] = *o.base_height;
  if (o.tab_width) job["render"]["tab_width"] = *o.tab_width;
  if (o.wrap) job["render"]["wrap_long_lines"] = *o.wrap;
  if (!o.vocab_path.empty()) {
    job["tokenizer"] = {{"kind", "vocab"}, {"vocab_path", o.vocab_path}};
  }
  if (o.repeats) job["repeats"] = *o.repeats;
  if (o.jobs) job["jobs"] = *o.jobs;
  if (o.max_n) job["max_n"] = *o.max_n;
  if (!o.instruction_file.empty()) job["instruction"] = slurp(o.instruction_file);
  if (o.temperature) job["temperature"] = *o.temperature;
  if (o.max_output_tokens) job["max_output_tokens"] = *o.max_output_tokens;
  if (!o.gateway_mode.empty()) job["gateway"]["mode"] = o.gateway_mode;
  if (o.mock_noise) job["gateway"]["mock_noise"] = *o.mock_noise;
  if (!o.base_url.empty()) job["gateway"]["endpoint"]["base_url"] = o.base_url;
  if (!o.model.empty()) job["gateway"]["endpoint"]["model"] = o.model;
  if (!o.api_key_env.empty()) job["gateway"]["endpoint"]["api_key_env"] = o.api_key_env;
  if (o.timeout) job["gateway"]["endpoint"]["timeout_seconds"] = *o.timeout;
  if (o.max_retries) job["gateway"]["endpoint"]["max_retries"] = *o.max_retries;
  if (o.backoff) job["gateway"]["endpoint"]["backoff_base_seconds"] = *o.backoff;
  return job.dump();
}

json endpoint_from(const Overrides& o) {
  json endpoint = {{"base_url", o.base_url}, {"model", o.model}};
  if (!o.api_key_env.empty()) endpoint["api_key_env"] = o.api_key_env;
  if (o.timeout) endpoint["timeout_seconds"] = *o.timeout;
  if (o.max_retries) endpoint["max_retries"] = *o.max_retries;
  if (o.backoff) endpoint["backoff_base_seconds"] = *o.backoff;
  return endpoint;
}

// Failure entries in the summary mean partial success; callers scripting the
// pipeline need a nonzero exit for that.
int exit_for_summary(const std::string& summary_text) {
  const json summary = json::parse(summary_text);
  if (summary.contains("failures") && !summary.at("failures").empty()) {
    std::cerr << "warning: " << summary.at("failures").size()
              << " file(s) failed to render\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"renders source code to token-budgeted images and scores "
               "reconstructions"};
  app.require_subcommand(1);

  JobArgs ingest_args, render_args, plan_args, compress_args, transcribe_args,
      score_args, report_args, run_args;

  auto* ingest = app.add_subcommand("ingest", "collect sources into a manifest");
  add_job_options(ingest, ingest_args);

  auto* render = app.add_subcommand("render", "draw full-size pages");
  add_job_options(render, render_args);
  bool bench = false;
  render->add_flag("--bench", bench, "measure throughput without writing pages");

  auto* plan = app.add_subcommand("plan", "compute visual-token budgets");
  add_job_options(plan, plan_args);
  std::optional<std::uint64_t> plan_tokens;
  int plan_pages = 1;
  double plan_aspect = 1.0;
  plan->add_option("--tokens", plan_tokens,
                   "plan a single budget for this text-token count");
  plan->add_option("--pages", plan_pages, "page count for --tokens mode");
  plan->add_option("--aspect", plan_aspect, "source aspect for --tokens mode");

  auto* compress = app.add_subcommand("compress", "downsample pages to budget");
  add_job_options(compress, compress_args);

  auto* transcribe = app.add_subcommand("transcribe", "read pages back through a model");
  add_job_options(transcribe, transcribe_args);
  std::vector<std::string> images;
  transcribe->add_option("--image", images,
                         "transcribe these PNGs directly (repeatable)");

  auto* score = app.add_subcommand("score", "compute reconstruction metrics");
  add_job_options(score, score_args);
  std::string truth_file, hyp_file;
  score->add_option("--truth", truth_file, "reference file for direct scoring");
  score->add_option("--hyp", hyp_file, "hypothesis file for direct scoring");

  auto* report = app.add_subcommand("report", "aggregate scores into a summary");
  add_job_options(report, report_args);

  auto* cost = app.add_subcommand("cost", "estimate request cost");
  std::string cost_model, pricing_file;
  std::uint64_t cost_input = 0, cost_output = 0;
  cost->add_option("--model", cost_model, "model name")->required();
  cost->add_option("--input-tokens", cost_input, "prompt tokens")->required();
  cost->add_option("--output-tokens", cost_output, "completion tokens");
  cost->add_option("--pricing", pricing_file, "pricing table (JSON)")
      ->check(CLI::ExistingFile);

  auto* run = app.add_subcommand("run", "all stages in order");
  add_job_options(run, run_args);

  CLI11_PARSE(app, argc, argv);

  char* error = nullptr;
  char* text = nullptr;

  if (*ingest) {
    check(codeocr_stage_ingest(merge_job(ingest_args).c_str(), &text, &error), &error);
    std::cout << take_string(text) << "\n";
    return 0;
  }
  if (*render) {
    check(codeocr_stage_render(merge_job(render_args).c_str(), bench ? 1 : 0, &text,
                               &error),
          &error);
    const std::string stats = take_string(text);
    std::cout << stats << "\n";
    return json::parse(stats).at("failures").get<std::uint64_t>() > 0 ? 1 : 0;
  }
  if (*plan) {
    if (plan_tokens) {
      const double ratio = plan_args.o.ratios.empty() ? 1.0 : plan_args.o.ratios.front();
      const int patch = plan_args.o.patch.value_or(14);
      check(codeocr_plan_compression(*plan_tokens, ratio, patch, plan_pages, plan_aspect,
                                     &text, &error),
            &error);
      std::cout << take_string(text) << "\n";
    } else {
      check(codeocr_stage_plan(merge_job(plan_args).c_str(), &error), &error);
    }
    return 0;
  }
  if (*compress) {
    check(codeocr_stage_compress(merge_job(compress_args).c_str(), &error), &error);
    return 0;
  }
  if (*transcribe) {
    if (!images.empty()) {
      std::vector<const char*> paths;
      paths.reserve(images.size());
      for (const auto& p : images) paths.push_back(p.c_str());
      json options = json::object();
      if (transcribe_args.o.temperature) {
        options["temperature"] = *transcribe_args.o.temperature;
      }
      if (transcribe_args.o.max_output_tokens) {
        options["max_tokens"] = *transcribe_args.o.max_output_tokens;
      }
      std::string instruction;
      if (!transcribe_args.o.instruction_file.empty()) {
        instruction = slurp(transcribe_args.o.instruction_file);
      }
      check(codeocr_transcribe_files(paths.data(), paths.size(),
                                     endpoint_from(transcribe_args.o).dump().c_str(),
                                     options.dump().c_str(),
                                     instruction.empty() ? nullptr : instruction.c_str(),
                                     &text, &error),
            &error);
      std::cout << take_string(text);
      return 0;
    }
    check(codeocr_stage_transcribe(merge_job(transcribe_args).c_str(), &error), &error);
    return 0;
  }
  if (*score) {
    if (!truth_file.empty() || !hyp_file.empty()) {
      if (truth_file.empty() || hyp_file.empty()) {
        std::cerr << "error: --truth and --hyp go together [precondition]\n";
        return 1;
      }
      const std::string truth = slurp(truth_file);
      const std::string hyp = slurp(hyp_file);
      const int max_n = score_args.o.max_n.value_or(4);
      json spec;
      if (!score_args.o.vocab_path.empty()) {
        spec = {{"kind", "vocab"}, {"vocab_path", score_args.o.vocab_path}};
      }
      const std::string spec_text = spec.is_null() ? "" : spec.dump();
      const char* spec_arg = spec_text.empty() ? nullptr : spec_text.c_str();
      double cer = 0.0, es = 0.0, ngram = 0.0;
      int em_strict = 0, em_trimmed = 0;
      check(codeocr_char_error_rate(truth.c_str(), hyp.c_str(), &cer, &error), &error);
      check(codeocr_edit_similarity(truth.c_str(), hyp.c_str(), spec_arg, &es, &error),
            &error);
      check(codeocr_exact_match(truth.c_str(), hyp.c_str(), 0, &em_strict, &error),
            &error);
      check(codeocr_exact_match(truth.c_str(), hyp.c_str(), 1, &em_trimmed, &error),
            &error);
      check(codeocr_ngram_match(truth.c_str(), hyp.c_str(), max_n, nullptr, &ngram,
                                &error),
            &error);
      check(codeocr_classify_errors(truth.c_str(), hyp.c_str(), spec_arg, &text, &error),
            &error);
      json out = {{"cer", cer},
                  {"es", es},
                  {"exact_match", em_strict != 0},
                  {"exact_match_trimmed", em_trimmed != 0},
                  {"ngram_match", ngram},
                  {"errors", json::parse(take_string(text))}};
      std::cout << out.dump(2) << "\n";
      return 0;
    }
    check(codeocr_stage_score(merge_job(score_args).c_str(), &error), &error);
    return 0;
  }
  if (*report) {
    check(codeocr_stage_report(merge_job(report_args).c_str(), &text, &error), &error);
    const std::string summary = take_string(text);
    std::cout << summary << "\n";
    return exit_for_summary(summary);
  }
  if (*cost) {
    const std::string pricing = pricing_file.empty() ? "" : slurp(pricing_file);
    check(codeocr_estimate_cost(cost_model.c_str(), cost_input, cost_output,
                                pricing.empty() ? nullptr : pricing.c_str(), &text,
                                &error),
          &error);
    std::cout << take_string(text) << "\n";
    return 0;
  }
  if (*run) {
    check(codeocr_run_pipeline(merge_job(run_args).c_str(), &text, &error), &error);
    const std::string summary = take_string(text);
    std::cout << summary << "\n";
    return exit_for_summary(summary);
  }
  return 0;
}
