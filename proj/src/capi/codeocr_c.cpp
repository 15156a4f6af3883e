#include "codeocr.h"

#include <cstdlib>
#include <cstring>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "core/budget.hpp"
#include "core/error.hpp"
#include "core/gateway.hpp"
#include "core/metrics.hpp"
#include "core/pipeline.hpp"
#include "core/png_codec.hpp"
#include "core/pricing.hpp"
#include "core/raster.hpp"
#include "core/resample.hpp"
#include "core/stats.hpp"
#include "core/taxonomy.hpp"
#include "core/text.hpp"
#include "core/tokenizer.hpp"

using nlohmann::json;

struct codeocr_render {
  codeocr::RenderResult result;
};

namespace {

char* dup_string(std::string_view s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) {
    std::memcpy(out, s.data(), s.size());
    out[s.size()] = '\0';
  }
  return out;
}

void set_error(char** error_out, std::string_view message) {
  if (error_out != nullptr) *error_out = dup_string(message);
}

// ErrorCode values match the status enum by construction.
codeocr_status to_status(codeocr::ErrorCode code) {
  return static_cast<codeocr_status>(static_cast<int>(code));
}

template <typename Fn>
codeocr_status guarded(char** error_out, Fn&& fn) {
  if (error_out != nullptr) *error_out = nullptr;
  try {
    fn();
    return CODEOCR_OK;
  } catch (const codeocr::Error& e) {
    set_error(error_out, e.what());
    return to_status(e.code());
  } catch (const std::exception& e) {
    set_error(error_out, e.what());
    return CODEOCR_ERR_INTERNAL;
  } catch (...) {
    set_error(error_out, "unidentified failure");
    return CODEOCR_ERR_INTERNAL;
  }
}

std::string_view arg_text(const char* text, const char* what) {
  codeocr::require(text != nullptr, codeocr::ErrorCode::Precondition,
                   std::string(what) + " must not be NULL");
  return text;
}

json parse_json_arg(const char* text, const char* what) {
  try {
    return json::parse(arg_text(text, what));
  } catch (const json::exception& e) {
    codeocr::fail(codeocr::ErrorCode::Parse, std::string(what) + ": " + e.what());
  }
}

codeocr::Tokenizer tokenizer_from_arg(const char* spec_json) {
  if (spec_json == nullptr || *spec_json == '\0') return codeocr::Tokenizer::builtin();
  const json doc = parse_json_arg(spec_json, "tokenizer spec");
  codeocr::TokenizerSpec spec;
  const std::string kind = doc.value("kind", "builtin");
  if (kind == "builtin") {
    spec.kind = codeocr::TokenizerKind::Builtin;
  } else if (kind == "vocab") {
    spec.kind = codeocr::TokenizerKind::ExternalVocab;
    codeocr::require(doc.contains("vocab_path"), codeocr::ErrorCode::Config,
                     "tokenizer spec: vocab_path required for kind 'vocab'");
    spec.vocab_path = doc.at("vocab_path").get<std::string>();
  } else {
    codeocr::fail(codeocr::ErrorCode::Config, "tokenizer spec: unknown kind: " + kind);
  }
  return codeocr::Tokenizer::from_spec(spec);
}

codeocr::JobSpec job_from_arg(const char* job_json) {
  return codeocr::JobSpec::from_json(parse_json_arg(job_json, "job"));
}

void emit_json(const json& doc, char** out) {
  if (out != nullptr) *out = dup_string(doc.dump(2));
}

codeocr::EndpointConfig endpoint_from_arg(const char* endpoint_json) {
  return codeocr::EndpointConfig::from_json(parse_json_arg(endpoint_json, "endpoint"));
}

codeocr::GenerationOptions options_from_arg(const char* options_json) {
  codeocr::GenerationOptions options;
  if (options_json == nullptr || *options_json == '\0') return options;
  const json doc = parse_json_arg(options_json, "options");
  try {
    if (doc.contains("temperature")) options.temperature = doc.at("temperature").get<double>();
    if (doc.contains("max_tokens")) options.max_tokens = doc.at("max_tokens").get<int>();
    if (doc.contains("seed")) options.seed = doc.at("seed").get<int>();
    if (doc.contains("image_limit_bytes")) {
      options.image_limit_bytes = doc.at("image_limit_bytes").get<std::size_t>();
    }
  } catch (const json::exception& e) {
    codeocr::fail(codeocr::ErrorCode::Config, std::string("options: ") + e.what());
  }
  return options;
}

}  // namespace

extern "C" {

const char* codeocr_status_name(int status) {
  switch (status) {
    case CODEOCR_OK: return "ok";
    case CODEOCR_ERR_PRECONDITION: return "precondition";
    case CODEOCR_ERR_CONFIG: return "config";
    case CODEOCR_ERR_PARSE: return "parse";
    case CODEOCR_ERR_INFEASIBLE: return "infeasible";
    case CODEOCR_ERR_OVERFLOW: return "overflow";
    case CODEOCR_ERR_LOOKUP: return "lookup";
    case CODEOCR_ERR_EMPTY_CORPUS: return "empty-corpus";
    case CODEOCR_ERR_DEGENERATE: return "degenerate";
    case CODEOCR_ERR_TRANSPORT: return "transport";
    case CODEOCR_ERR_JUDGE_FORMAT: return "judge-format";
    case CODEOCR_ERR_REQUEST_TOO_LARGE: return "request-too-large";
    case CODEOCR_ERR_IO: return "io";
    case CODEOCR_ERR_INTERNAL: return "internal";
    default: return "unknown";
  }
}

void codeocr_string_free(char* s) { std::free(s); }
void codeocr_buffer_free(void* p) { std::free(p); }

codeocr_status codeocr_render_create(const char* source_utf8, const char* config_json,
                                     const char* language, codeocr_render_t* render_out,
                                     char** error_out) {
  return guarded(error_out, [&] {
    const std::string_view source = arg_text(source_utf8, "source");
    codeocr::require(render_out != nullptr, codeocr::ErrorCode::Precondition,
                     "render_out must not be NULL");
    codeocr::RenderConfig config;
    if (config_json != nullptr && *config_json != '\0') {
      config = codeocr::render_config_from_json(parse_json_arg(config_json, "render config"));
    }
    const std::string lang =
        (language == nullptr || *language == '\0') ? "plain-text" : language;
    auto handle = std::make_unique<codeocr_render>();
    handle->result = codeocr::render_document(source, config, lang);
    *render_out = handle.release();
  });
}

void codeocr_render_free(codeocr_render_t render) { delete render; }

int codeocr_render_page_count(codeocr_render_t render) {
  if (render == nullptr) return 0;
  return static_cast<int>(render->result.pages.size());
}

codeocr_status codeocr_render_manifest_json(codeocr_render_t render, char** json_out,
                                            char** error_out) {
  return guarded(error_out, [&] {
    codeocr::require(render != nullptr, codeocr::ErrorCode::Precondition,
                     "render handle must not be NULL");
    emit_json(render->result.manifest.to_json(), json_out);
  });
}

codeocr_status codeocr_render_page_png(codeocr_render_t render, int page, int target_width,
                                       int target_height, void** png_out,
                                       size_t* png_len_out, char** error_out) {
  return guarded(error_out, [&] {
    codeocr::require(render != nullptr, codeocr::ErrorCode::Precondition,
                     "render handle must not be NULL");
    codeocr::require(png_out != nullptr && png_len_out != nullptr,
                     codeocr::ErrorCode::Precondition, "png output pointers required");
    const auto& pages = render->result.pages;
    codeocr::require(page >= 0 && static_cast<std::size_t>(page) < pages.size(),
                     codeocr::ErrorCode::Precondition,
                     "page index out of range: " + std::to_string(page));
    std::string bytes;
    if (target_width == 0 && target_height == 0) {
      bytes = codeocr::encode_png(pages[page]);
    } else {
      bytes = codeocr::encode_png(
          codeocr::downsample_bilinear(pages[page], target_width, target_height));
    }
    void* buffer = std::malloc(bytes.size());
    codeocr::require(buffer != nullptr, codeocr::ErrorCode::Internal, "out of memory");
    std::memcpy(buffer, bytes.data(), bytes.size());
    *png_out = buffer;
    *png_len_out = bytes.size();
  });
}

codeocr_status codeocr_visual_token_count(int width, int height, int patch,
                                          uint64_t* count_out, char** error_out) {
  return guarded(error_out, [&] {
    const std::uint64_t count = codeocr::visual_token_count(width, height, patch);
    if (count_out != nullptr) *count_out = count;
  });
}

codeocr_status codeocr_plan_compression(uint64_t text_tokens, double ratio, int patch,
                                        int pages, double source_aspect,
                                        char** plan_json_out, char** error_out) {
  return guarded(error_out, [&] {
    const codeocr::CompressionPlan plan =
        codeocr::plan_compression(text_tokens, ratio, patch, pages, source_aspect);
    emit_json(plan.to_json(), plan_json_out);
  });
}

codeocr_status codeocr_count_text_tokens(const char* text_utf8,
                                         const char* tokenizer_spec_json,
                                         uint64_t* count_out, char** error_out) {
  return guarded(error_out, [&] {
    const std::string_view text = arg_text(text_utf8, "text");
    const codeocr::Tokenizer tokenizer = tokenizer_from_arg(tokenizer_spec_json);
    const std::uint64_t count = tokenizer.count(text);
    if (count_out != nullptr) *count_out = count;
  });
}

codeocr_status codeocr_char_error_rate(const char* truth, const char* hypothesis,
                                       double* cer_out, char** error_out) {
  return guarded(error_out, [&] {
    const double cer = codeocr::char_error_rate(arg_text(truth, "truth"),
                                                arg_text(hypothesis, "hypothesis"));
    if (cer_out != nullptr) *cer_out = cer;
  });
}

codeocr_status codeocr_edit_similarity(const char* truth, const char* hypothesis,
                                       const char* tokenizer_spec_json, double* es_out,
                                       char** error_out) {
  return guarded(error_out, [&] {
    const codeocr::Tokenizer tokenizer = tokenizer_from_arg(tokenizer_spec_json);
    const double es = codeocr::edit_similarity(arg_text(truth, "truth"),
                                               arg_text(hypothesis, "hypothesis"), tokenizer);
    if (es_out != nullptr) *es_out = es;
  });
}

codeocr_status codeocr_exact_match(const char* truth, const char* hypothesis,
                                   int trim_trailing, int* match_out, char** error_out) {
  return guarded(error_out, [&] {
    const bool match = codeocr::exact_match(
        arg_text(truth, "truth"), arg_text(hypothesis, "hypothesis"),
        trim_trailing != 0 ? codeocr::MatchNormalization::TrimTrailing
                           : codeocr::MatchNormalization::Strict);
    if (match_out != nullptr) *match_out = match ? 1 : 0;
  });
}

codeocr_status codeocr_ngram_match(const char* truth, const char* hypothesis, int max_n,
                                   const char* keyword_weights_json, double* score_out,
                                   char** error_out) {
  return guarded(error_out, [&] {
    std::map<std::string, double> weights;
    if (keyword_weights_json != nullptr && *keyword_weights_json != '\0') {
      const json doc = parse_json_arg(keyword_weights_json, "keyword weights");
      codeocr::require(doc.is_object(), codeocr::ErrorCode::Config,
                       "keyword weights: expected a JSON object");
      for (const auto& [token, weight] : doc.items()) {
        codeocr::require(weight.is_number(), codeocr::ErrorCode::Config,
                         "keyword weights: weight for '" + token + "' must be a number");
        weights[token] = weight.get<double>();
      }
    }
    const double score = codeocr::ngram_match(arg_text(truth, "truth"),
                                              arg_text(hypothesis, "hypothesis"), max_n,
                                              weights);
    if (score_out != nullptr) *score_out = score;
  });
}

codeocr_status codeocr_classify_errors(const char* truth, const char* hypothesis,
                                       const char* tokenizer_spec_json,
                                       char** counts_json_out, char** error_out) {
  return guarded(error_out, [&] {
    const codeocr::Tokenizer tokenizer = tokenizer_from_arg(tokenizer_spec_json);
    const codeocr::ErrorCounts counts = codeocr::classify_errors(
        arg_text(truth, "truth"), arg_text(hypothesis, "hypothesis"), tokenizer);
    emit_json(json{{"token_errors", counts.token_errors},
                   {"line_errors", counts.line_errors},
                   {"block_errors", counts.block_errors},
                   {"aligned_pairs", counts.aligned_pairs}},
              counts_json_out);
  });
}

codeocr_status codeocr_wilcoxon_signed_rank(const double* a, const double* b, size_t n,
                                            double* statistic_out, double* p_value_out,
                                            char** error_out) {
  return guarded(error_out, [&] {
    codeocr::require(n == 0 || (a != nullptr && b != nullptr),
                     codeocr::ErrorCode::Precondition, "sample arrays must not be NULL");
    const codeocr::WilcoxonResult result =
        codeocr::wilcoxon_signed_rank(std::span<const double>(a, n),
                                      std::span<const double>(b, n));
    if (statistic_out != nullptr) *statistic_out = result.statistic;
    if (p_value_out != nullptr) *p_value_out = result.p_value;
  });
}

codeocr_status codeocr_summarize_runs(const double* values, size_t n, double* mean_out,
                                      double* stddev_out, char** error_out) {
  return guarded(error_out, [&] {
    codeocr::require(n == 0 || values != nullptr, codeocr::ErrorCode::Precondition,
                     "values must not be NULL");
    const codeocr::RunSummary summary =
        codeocr::summarize_runs(std::span<const double>(values, n));
    if (mean_out != nullptr) *mean_out = summary.mean;
    if (stddev_out != nullptr) *stddev_out = summary.stddev;
  });
}

codeocr_status codeocr_estimate_cost(const char* model, uint64_t input_tokens,
                                     uint64_t output_tokens, const char* pricing_json,
                                     char** estimate_json_out, char** error_out) {
  return guarded(error_out, [&] {
    const std::string model_name{arg_text(model, "model")};
    codeocr::CostEstimate estimate;
    if (pricing_json == nullptr || *pricing_json == '\0') {
      estimate = codeocr::estimate_cost(input_tokens, output_tokens, model_name,
                                        codeocr::PricingTable::builtin());
    } else {
      estimate = codeocr::estimate_cost(input_tokens, output_tokens, model_name,
                                        codeocr::PricingTable::from_json(pricing_json));
    }
    emit_json(estimate.to_json(), estimate_json_out);
  });
}

codeocr_status codeocr_transcribe_files(const char* const* png_paths, size_t n_paths,
                                        const char* endpoint_json, const char* options_json,
                                        const char* instruction, char** text_out,
                                        char** error_out) {
  return guarded(error_out, [&] {
    codeocr::require(png_paths != nullptr && n_paths > 0, codeocr::ErrorCode::Precondition,
                     "at least one page image required");
    std::vector<std::string> images;
    images.reserve(n_paths);
    for (size_t i = 0; i < n_paths; ++i) {
      images.push_back(codeocr::read_file(std::string(arg_text(png_paths[i], "png path"))));
    }
    const codeocr::EndpointConfig endpoint = endpoint_from_arg(endpoint_json);
    const codeocr::GenerationOptions options = options_from_arg(options_json);
    codeocr::HttpTransport transport(endpoint.base_url, endpoint.timeout_seconds);
    const codeocr::TranscribeResult result = codeocr::transcribe_images(
        images, endpoint, transport, options, instruction == nullptr ? "" : instruction);
    if (text_out != nullptr) *text_out = dup_string(result.text);
  });
}

codeocr_status codeocr_comparison_score(const char* candidate, const char* reference,
                                        const char* endpoint_json,
                                        const char* prompt_template, double* score_out,
                                        char** error_out) {
  return guarded(error_out, [&] {
    const codeocr::EndpointConfig endpoint = endpoint_from_arg(endpoint_json);
    codeocr::HttpTransport transport(endpoint.base_url, endpoint.timeout_seconds);
    const double score = codeocr::comparison_score(
        std::string(arg_text(candidate, "candidate")),
        std::string(arg_text(reference, "reference")), endpoint, transport,
        prompt_template == nullptr ? "" : prompt_template);
    if (score_out != nullptr) *score_out = score;
  });
}

codeocr_status codeocr_stage_ingest(const char* job_json, char** manifest_json_out,
                                    char** error_out) {
  return guarded(error_out, [&] {
    const codeocr::CorpusManifest manifest = codeocr::stage_ingest(job_from_arg(job_json));
    emit_json(manifest.to_json(), manifest_json_out);
  });
}

codeocr_status codeocr_stage_render(const char* job_json, int bench, char** stats_json_out,
                                    char** error_out) {
  return guarded(error_out, [&] {
    const codeocr::RenderStats stats =
        codeocr::stage_render(job_from_arg(job_json), bench != 0);
    emit_json(stats.to_json(), stats_json_out);
  });
}

codeocr_status codeocr_stage_plan(const char* job_json, char** error_out) {
  return guarded(error_out, [&] { codeocr::stage_plan(job_from_arg(job_json)); });
}

codeocr_status codeocr_stage_compress(const char* job_json, char** error_out) {
  return guarded(error_out, [&] { codeocr::stage_compress(job_from_arg(job_json)); });
}

codeocr_status codeocr_stage_transcribe(const char* job_json, char** error_out) {
  return guarded(error_out, [&] { codeocr::stage_transcribe(job_from_arg(job_json)); });
}

codeocr_status codeocr_stage_score(const char* job_json, char** error_out) {
  return guarded(error_out, [&] { codeocr::stage_score(job_from_arg(job_json)); });
}

codeocr_status codeocr_stage_report(const char* job_json, char** summary_json_out,
                                    char** error_out) {
  return guarded(error_out, [&] {
    emit_json(codeocr::stage_report(job_from_arg(job_json)), summary_json_out);
  });
}

codeocr_status codeocr_run_pipeline(const char* job_json, char** summary_json_out,
                                    char** error_out) {
  return guarded(error_out, [&] {
    emit_json(codeocr::run_pipeline(job_from_arg(job_json)), summary_json_out);
  });
}

}  // extern "C"
