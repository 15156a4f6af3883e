/* C interface to the optical code compression library.
 *
 * Conventions:
 *   - Functions return codeocr_status; CODEOCR_OK is 0.
 *   - On failure, when `error_out` is non-NULL it receives a heap-allocated
 *     message; release it with codeocr_string_free. It is set to NULL on
 *     success.
 *   - Returned strings/buffers are owned by the caller and released with
 *     codeocr_string_free / codeocr_buffer_free.
 *   - Structured inputs and outputs are JSON strings; the schemas match the
 *     job files and artifacts the pipeline writes.
 */
#ifndef CODEOCR_H
#define CODEOCR_H

#include <stddef.h>
#include <stdint.h>

#if defined(__GNUC__)
#define CODEOCR_API __attribute__((visibility("default")))
#else
#define CODEOCR_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum codeocr_status {
  CODEOCR_OK = 0,
  CODEOCR_ERR_PRECONDITION = 1,
  CODEOCR_ERR_CONFIG = 2,
  CODEOCR_ERR_PARSE = 3,
  CODEOCR_ERR_INFEASIBLE = 4,
  CODEOCR_ERR_OVERFLOW = 5,
  CODEOCR_ERR_LOOKUP = 6,
  CODEOCR_ERR_EMPTY_CORPUS = 7,
  CODEOCR_ERR_DEGENERATE = 8,
  CODEOCR_ERR_TRANSPORT = 9,
  CODEOCR_ERR_JUDGE_FORMAT = 10,
  CODEOCR_ERR_REQUEST_TOO_LARGE = 11,
  CODEOCR_ERR_IO = 12,
  CODEOCR_ERR_INTERNAL = 13
} codeocr_status;

CODEOCR_API const char* codeocr_status_name(int status);

CODEOCR_API void codeocr_string_free(char* s);
CODEOCR_API void codeocr_buffer_free(void* p);

/* ---- rendering ---------------------------------------------------- */

/* A rendered document: full-size page images plus a manifest. */
typedef struct codeocr_render* codeocr_render_t;

/* `config_json` may be NULL for defaults; keys as in the job file's
 * "render" object. `language` is a profile name, "plain-text", or NULL to
 * mean plain text. */
CODEOCR_API codeocr_status codeocr_render_create(const char* source_utf8,
                                     const char* config_json,
                                     const char* language,
                                     codeocr_render_t* render_out,
                                     char** error_out);
CODEOCR_API void codeocr_render_free(codeocr_render_t render);

CODEOCR_API int codeocr_render_page_count(codeocr_render_t render);
CODEOCR_API codeocr_status codeocr_render_manifest_json(codeocr_render_t render,
                                            char** json_out, char** error_out);

/* PNG bytes for one page, optionally downsampled to target_width x
 * target_height (pass 0,0 for full size). */
CODEOCR_API codeocr_status codeocr_render_page_png(codeocr_render_t render, int page,
                                       int target_width, int target_height,
                                       void** png_out, size_t* png_len_out,
                                       char** error_out);

/* ---- budgets ------------------------------------------------------ */

CODEOCR_API codeocr_status codeocr_visual_token_count(int width, int height, int patch,
                                          uint64_t* count_out, char** error_out);

/* Result is the plan JSON written by the pipeline's plan stage. */
CODEOCR_API codeocr_status codeocr_plan_compression(uint64_t text_tokens, double ratio,
                                        int patch, int pages, double source_aspect,
                                        char** plan_json_out, char** error_out);

/* `tokenizer_spec_json` like {"kind":"builtin"} or
 * {"kind":"vocab","vocab_path":"..."}; NULL means builtin. */
CODEOCR_API codeocr_status codeocr_count_text_tokens(const char* text_utf8,
                                         const char* tokenizer_spec_json,
                                         uint64_t* count_out, char** error_out);

/* ---- metrics ------------------------------------------------------ */

CODEOCR_API codeocr_status codeocr_char_error_rate(const char* truth, const char* hypothesis,
                                       double* cer_out, char** error_out);
CODEOCR_API codeocr_status codeocr_edit_similarity(const char* truth, const char* hypothesis,
                                       const char* tokenizer_spec_json,
                                       double* es_out, char** error_out);
/* trim_trailing nonzero ignores trailing whitespace and trailing blank
 * lines. *match_out is 0 or 1. */
CODEOCR_API codeocr_status codeocr_exact_match(const char* truth, const char* hypothesis,
                                   int trim_trailing, int* match_out,
                                   char** error_out);
/* `keyword_weights_json` maps token to weight, e.g. {"def": 4.0}; NULL for
 * uniform weights. */
CODEOCR_API codeocr_status codeocr_ngram_match(const char* truth, const char* hypothesis,
                                   int max_n, const char* keyword_weights_json,
                                   double* score_out, char** error_out);
/* Result JSON: {"token_errors":n,"line_errors":n,"block_errors":n,
 * "aligned_pairs":n}. */
CODEOCR_API codeocr_status codeocr_classify_errors(const char* truth, const char* hypothesis,
                                       const char* tokenizer_spec_json,
                                       char** counts_json_out, char** error_out);

/* ---- statistics ---------------------------------------------------- */

CODEOCR_API codeocr_status codeocr_wilcoxon_signed_rank(const double* a, const double* b,
                                            size_t n, double* statistic_out,
                                            double* p_value_out, char** error_out);
CODEOCR_API codeocr_status codeocr_summarize_runs(const double* values, size_t n,
                                      double* mean_out, double* stddev_out,
                                      char** error_out);

/* ---- cost ---------------------------------------------------------- */

/* `pricing_json` NULL uses the bundled table. Result JSON includes exact
 * nanodollar amounts and a formatted total. */
CODEOCR_API codeocr_status codeocr_estimate_cost(const char* model, uint64_t input_tokens,
                                     uint64_t output_tokens,
                                     const char* pricing_json,
                                     char** estimate_json_out, char** error_out);

/* ---- model gateway -------------------------------------------------- */

/* `endpoint_json`: {"base_url":...,"model":...,"api_key_env":...,
 * "timeout_seconds":...,"max_retries":...,"backoff_base_seconds":...}.
 * The API key is read from the named environment variable at call time.
 * `png_paths` are files read from disk. `options_json` may carry
 * temperature, max_tokens, seed, image_limit_bytes; NULL for defaults.
 * `instruction` NULL uses the bundled transcription prompt. */
CODEOCR_API codeocr_status codeocr_transcribe_files(const char* const* png_paths, size_t n_paths,
                                        const char* endpoint_json,
                                        const char* options_json,
                                        const char* instruction,
                                        char** text_out, char** error_out);

/* Order-swapped pairwise judgment; mean of two integer scores in [0,100]. */
CODEOCR_API codeocr_status codeocr_comparison_score(const char* candidate, const char* reference,
                                        const char* endpoint_json,
                                        const char* prompt_template,
                                        double* score_out, char** error_out);

/* ---- pipeline stages ------------------------------------------------ */

/* All take the job JSON (same schema as a job file). Outputs land under the
 * job's output_dir. */
CODEOCR_API codeocr_status codeocr_stage_ingest(const char* job_json, char** manifest_json_out,
                                    char** error_out);
/* bench nonzero measures render+encode throughput without writing pages.
 * stats_json_out receives {"files":..,"pages":..,"text_tokens":..,
 * "failures":..,"seconds":..,"tokens_per_second":..}. */
CODEOCR_API codeocr_status codeocr_stage_render(const char* job_json, int bench,
                                    char** stats_json_out, char** error_out);
CODEOCR_API codeocr_status codeocr_stage_plan(const char* job_json, char** error_out);
CODEOCR_API codeocr_status codeocr_stage_compress(const char* job_json, char** error_out);
CODEOCR_API codeocr_status codeocr_stage_transcribe(const char* job_json, char** error_out);
CODEOCR_API codeocr_status codeocr_stage_score(const char* job_json, char** error_out);
CODEOCR_API codeocr_status codeocr_stage_report(const char* job_json, char** summary_json_out,
                                    char** error_out);
/* Every stage in order; returns the summary. */
CODEOCR_API codeocr_status codeocr_run_pipeline(const char* job_json, char** summary_json_out,
                                    char** error_out);

#ifdef __cplusplus
}
#endif

#endif /* CODEOCR_H */
