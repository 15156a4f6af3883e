#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace codeocr {

struct HttpResponse {
  int status = 0;
  std::string body;
};

using HeaderList = std::vector<std::pair<std::string, std::string>>;

// Injection point for tests and offline runs: everything above this
// interface (request building, retries, parsing, fence stripping) is
// identical no matter what sits below it.
class Transport {
 public:
  virtual ~Transport() = default;
  // Throws Error(Transport) when no response was obtained at all.
  virtual HttpResponse post(const std::string& path, const HeaderList& headers,
                            const std::string& body) = 0;
  virtual void sleep_seconds(double seconds);
};

// Real HTTP(S) client for OpenAI-compatible chat endpoints.
class HttpTransport : public Transport {
 public:
  HttpTransport(const std::string& base_url, double timeout_seconds);
  ~HttpTransport() override;
  HttpResponse post(const std::string& path, const HeaderList& headers,
                    const std::string& body) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Replays canned responses in order; records requests. For unit tests.
class ScriptedTransport : public Transport {
 public:
  explicit ScriptedTransport(std::vector<HttpResponse> responses);
  HttpResponse post(const std::string& path, const HeaderList& headers,
                    const std::string& body) override;
  void sleep_seconds(double seconds) override;  // records, never sleeps

  const std::vector<std::string>& bodies() const { return bodies_; }
  const std::vector<HeaderList>& headers() const { return headers_; }
  const std::vector<double>& sleeps() const { return sleeps_; }

 private:
  std::vector<HttpResponse> responses_;
  std::vector<std::string> bodies_;
  std::vector<HeaderList> headers_;
  std::vector<double> sleeps_;
  std::size_t next_ = 0;
};

// Offline stand-in for a vision model: answers every chat request with a
// deterministic perturbation of the given ground truth. The perturbation is
// seeded by the request bytes, so distinct requests (different generation
// seeds, pages, ratios) yield distinct but reproducible transcriptions, and
// `noise` scales the per-character error rate. Some replies arrive wrapped
// in a markdown fence to exercise normalization.
class SimulatorTransport : public Transport {
 public:
  SimulatorTransport(std::string truth, double noise);
  HttpResponse post(const std::string& path, const HeaderList& headers,
                    const std::string& body) override;
  void sleep_seconds(double seconds) override {}

 private:
  std::string truth_;
  double noise_;
};

struct EndpointConfig {
  std::string base_url;     // http(s)://host[:port][/prefix]
  std::string model;
  std::string api_key_env;  // env var holding the key; empty means no auth
  double timeout_seconds = 120.0;
  int max_retries = 3;
  double backoff_base_seconds = 1.0;

  void validate() const;
  nlohmann::json to_json() const;
  static EndpointConfig from_json(const nlohmann::json& doc);
};

struct GenerationOptions {
  std::optional<double> temperature;
  std::optional<int> max_tokens;
  std::optional<int> seed;
  std::size_t image_limit_bytes = 20 * 1024 * 1024;
};

std::string base64_encode(std::string_view bytes);

// OpenAI-style chat request: one user message, instruction text first, then
// the images in order as data URLs. Oversized images fail here, before any
// network traffic. Instruction and images must not both be empty.
nlohmann::json build_chat_request(const std::string& model,
                                  const std::string& instruction,
                                  const std::vector<std::string>& png_images,
                                  const GenerationOptions& options);

struct ChatOutcome {
  std::string text;      // assistant message content
  int attempts = 1;      // requests actually sent
  std::string raw_body;  // final response body, for run logs
};

// Sends with retries on 408/429/5xx and transport failures, exponential
// backoff (base * 2^attempt). Other statuses fail immediately.
ChatOutcome chat_complete(Transport& transport, const EndpointConfig& endpoint,
                          const nlohmann::json& request);

// Removes one wrapping markdown fence (with optional language tag) if and
// only if the whole text is enclosed by it; inner fences stay.
std::string strip_code_fence(const std::string& text);

struct TranscribeResult {
  std::string text;  // normalized transcription
  int attempts = 1;
  std::string raw_body;
};

// `instruction` empty means the bundled transcription prompt.
TranscribeResult transcribe_images(const std::vector<std::string>& png_images,
                                   const EndpointConfig& endpoint,
                                   Transport& transport,
                                   const GenerationOptions& options,
                                   const std::string& instruction = "");

// Position-bias-averaged pairwise judgment: two calls with the texts in both
// orders, each reply parsed as an integer 0..100, mean returned. A reply
// that does not parse is a judge-format error carrying the raw reply.
// `prompt_template` empty means the bundled judge prompt; templates use
// {a} and {b} placeholders.
double comparison_score(const std::string& candidate, const std::string& reference,
                        const EndpointConfig& endpoint, Transport& transport,
                        const std::string& prompt_template = "");

}  // namespace codeocr
