#include "core/gateway.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <random>
#include <thread>

#include <httplib.h>

#include "core/assets.hpp"
#include "core/digest.hpp"
#include "core/error.hpp"
#include "core/text.hpp"

namespace codeocr {

void Transport::sleep_seconds(double seconds) {
  std::this_thread::sleep_for(std::chrono::duration<double>(seconds));
}

struct HttpTransport::Impl {
  std::string host;  // scheme://host:port for httplib
  std::string prefix;
  double timeout;
};

HttpTransport::HttpTransport(const std::string& base_url, double timeout_seconds)
    : impl_(std::make_unique<Impl>()) {
  const std::size_t scheme_end = base_url.find("://");
  require(scheme_end != std::string::npos, ErrorCode::Config,
          "endpoint: base_url must include a scheme: " + base_url);
  const std::size_t path_start = base_url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) {
    impl_->host = base_url;
  } else {
    impl_->host = base_url.substr(0, path_start);
    impl_->prefix = base_url.substr(path_start);
    while (!impl_->prefix.empty() && impl_->prefix.back() == '/') impl_->prefix.pop_back();
  }
  impl_->timeout = timeout_seconds;
}

HttpTransport::~HttpTransport() = default;

HttpResponse HttpTransport::post(const std::string& path, const HeaderList& headers,
                                 const std::string& body) {
  httplib::Client client(impl_->host);
  client.set_connection_timeout(std::chrono::duration<double>(impl_->timeout));
  client.set_read_timeout(std::chrono::duration<double>(impl_->timeout));
  client.set_write_timeout(std::chrono::duration<double>(impl_->timeout));

  httplib::Headers hl;
  for (const auto& [k, v] : headers) hl.emplace(k, v);

  const auto res = client.Post(impl_->prefix + path, hl, body, "application/json");
  if (!res) {
    fail(ErrorCode::Transport,
         "transport: request to " + impl_->host + " failed: " + httplib::to_string(res.error()));
  }
  return {res->status, res->body};
}

ScriptedTransport::ScriptedTransport(std::vector<HttpResponse> responses)
    : responses_(std::move(responses)) {}

HttpResponse ScriptedTransport::post(const std::string& path, const HeaderList& headers,
                                     const std::string& body) {
  (void)path;
  bodies_.push_back(body);
  headers_.push_back(headers);
  require(next_ < responses_.size(), ErrorCode::Transport,
          "transport: no scripted response left");
  return responses_[next_++];
}

void ScriptedTransport::sleep_seconds(double seconds) { sleeps_.push_back(seconds); }

SimulatorTransport::SimulatorTransport(std::string truth, double noise)
    : truth_(std::move(truth)), noise_(noise) {}

HttpResponse SimulatorTransport::post(const std::string& path, const HeaderList& headers,
                                      const std::string& body) {
  (void)path;
  (void)headers;
  std::mt19937_64 rng(fnv1a64(body));
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // Character-level noise grows with the compression ratio: substitutions
  // from visually confusable sets, occasional drops and duplicates.
  static constexpr std::string_view kConfusable[] = {"Il1|", "O0o", "S5", "B8",
                                                     "rn", "cl", ";:", ",."};
  const double p_sub = std::min(0.2, 0.0020 * noise_);
  const double p_del = std::min(0.1, 0.0006 * noise_);
  const double p_ins = std::min(0.1, 0.0004 * noise_);

  const std::vector<char32_t> cps = decode_utf8(truth_);
  std::vector<char32_t> out;
  out.reserve(cps.size());
  for (char32_t cp : cps) {
    const double roll = unit(rng);
    if (cp != U'\n' && roll < p_sub) {
      bool replaced = false;
      for (std::string_view set : kConfusable) {
        const std::vector<char32_t> chars = decode_utf8(set);
        for (std::size_t i = 0; i < chars.size(); ++i) {
          if (chars[i] == cp) {
            out.push_back(chars[(i + 1) % chars.size()]);
            replaced = true;
            break;
          }
        }
        if (replaced) break;
      }
      if (!replaced) {
        out.push_back(cp == U'e' ? U'c' : (cp == U'a' ? U'o' : cp));
      }
    } else if (cp != U'\n' && roll < p_sub + p_del) {
      continue;
    } else if (cp != U'\n' && roll < p_sub + p_del + p_ins) {
      out.push_back(cp);
      out.push_back(cp);
    } else {
      out.push_back(cp);
    }
  }

  std::string text = encode_utf8(out);
  if ((fnv1a64(body) & 7) == 0) {
    text = "```\n" + text + "\n```";  // exercise fence normalization
  }

  const nlohmann::json reply = {
      {"choices", {{{"message", {{"role", "assistant"}, {"content", text}}}}}}};
  return {200, reply.dump()};
}

void EndpointConfig::validate() const {
  require(!base_url.empty(), ErrorCode::Config, "endpoint: base_url required");
  require(!model.empty(), ErrorCode::Config, "endpoint: model required");
  require(timeout_seconds > 0.0, ErrorCode::Config, "endpoint: timeout must be positive");
  require(max_retries >= 0, ErrorCode::Config, "endpoint: max_retries must not be negative");
  require(backoff_base_seconds >= 0.0, ErrorCode::Config,
          "endpoint: backoff must not be negative");
}

nlohmann::json EndpointConfig::to_json() const {
  return {{"base_url", base_url},
          {"model", model},
          {"api_key_env", api_key_env},
          {"timeout_seconds", timeout_seconds},
          {"max_retries", max_retries},
          {"backoff_base_seconds", backoff_base_seconds}};
}

EndpointConfig EndpointConfig::from_json(const nlohmann::json& doc) {
  // Shape only; validation happens where the endpoint is actually used, so
  // partial configs (a mock job, flags still to be merged) stay loadable.
  EndpointConfig c;
  try {
    if (doc.contains("base_url")) c.base_url = doc.at("base_url").get<std::string>();
    if (doc.contains("model")) c.model = doc.at("model").get<std::string>();
    if (doc.contains("api_key_env")) c.api_key_env = doc.at("api_key_env").get<std::string>();
    if (doc.contains("timeout_seconds")) c.timeout_seconds = doc.at("timeout_seconds").get<double>();
    if (doc.contains("max_retries")) c.max_retries = doc.at("max_retries").get<int>();
    if (doc.contains("backoff_base_seconds")) {
      c.backoff_base_seconds = doc.at("backoff_base_seconds").get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Config, std::string("endpoint: ") + e.what());
  }
  return c;
}

std::string base64_encode(std::string_view bytes) {
  static const char* alphabet =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  std::size_t i = 0;
  while (i + 3 <= bytes.size()) {
    const std::uint32_t v = (static_cast<unsigned char>(bytes[i]) << 16) |
                            (static_cast<unsigned char>(bytes[i + 1]) << 8) |
                            static_cast<unsigned char>(bytes[i + 2]);
    out.push_back(alphabet[(v >> 18) & 63]);
    out.push_back(alphabet[(v >> 12) & 63]);
    out.push_back(alphabet[(v >> 6) & 63]);
    out.push_back(alphabet[v & 63]);
    i += 3;
  }
  const std::size_t rest = bytes.size() - i;
  if (rest == 1) {
    const std::uint32_t v = static_cast<unsigned char>(bytes[i]) << 16;
    out.push_back(alphabet[(v >> 18) & 63]);
    out.push_back(alphabet[(v >> 12) & 63]);
    out.append("==");
  } else if (rest == 2) {
    const std::uint32_t v = (static_cast<unsigned char>(bytes[i]) << 16) |
                            (static_cast<unsigned char>(bytes[i + 1]) << 8);
    out.push_back(alphabet[(v >> 18) & 63]);
    out.push_back(alphabet[(v >> 12) & 63]);
    out.push_back(alphabet[(v >> 6) & 63]);
    out.push_back('=');
  }
  return out;
}

nlohmann::json build_chat_request(const std::string& model,
                                  const std::string& instruction,
                                  const std::vector<std::string>& png_images,
                                  const GenerationOptions& options) {
  require(!instruction.empty() || !png_images.empty(), ErrorCode::Precondition,
          "request: instruction and images cannot both be empty");

  nlohmann::json content = nlohmann::json::array();
  if (!instruction.empty()) {
    content.push_back({{"type", "text"}, {"text", instruction}});
  }
  for (std::size_t i = 0; i < png_images.size(); ++i) {
    const std::string& png = png_images[i];
    if (png.size() > options.image_limit_bytes) {
      fail(ErrorCode::RequestTooLarge,
           "request: image " + std::to_string(i) + " is " + std::to_string(png.size()) +
               " bytes, over the " + std::to_string(options.image_limit_bytes) +
               " byte limit");
    }
    content.push_back(
        {{"type", "image_url"},
         {"image_url", {{"url", "data:image/png;base64," + base64_encode(png)}}}});
  }

  nlohmann::json request = {
      {"model", model},
      {"messages", {{{"role", "user"}, {"content", content}}}}};
  if (options.temperature) request["temperature"] = *options.temperature;
  if (options.max_tokens) request["max_tokens"] = *options.max_tokens;
  if (options.seed) request["seed"] = *options.seed;
  return request;
}

namespace {

bool retryable_status(int status) {
  return status == 408 || status == 429 || (status >= 500 && status <= 599);
}

HeaderList auth_headers(const EndpointConfig& endpoint) {
  HeaderList headers;
  if (!endpoint.api_key_env.empty()) {
    const char* key = std::getenv(endpoint.api_key_env.c_str());
    require(key != nullptr && *key != '\0', ErrorCode::Config,
            "endpoint: environment variable " + endpoint.api_key_env + " is not set");
    headers.emplace_back("Authorization", std::string("Bearer ") + key);
  }
  return headers;
}

std::string extract_content(const std::string& body) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception&) {
    fail(ErrorCode::Parse, "completion: response is not JSON");
  }
  try {
    const auto& message = doc.at("choices").at(0).at("message");
    const auto& content = message.at("content");
    if (content.is_string()) return content.get<std::string>();
    if (content.is_array()) {
      std::string text;
      for (const auto& part : content) {
        if (part.contains("text")) text += part.at("text").get<std::string>();
      }
      return text;
    }
  } catch (const nlohmann::json::exception&) {
  }
  fail(ErrorCode::Parse, "completion: no message content in response");
}

}  // namespace

ChatOutcome chat_complete(Transport& transport, const EndpointConfig& endpoint,
                          const nlohmann::json& request) {
  endpoint.validate();
  const HeaderList headers = auth_headers(endpoint);
  const std::string body = request.dump();

  ChatOutcome outcome;
  std::string last_failure;
  for (int attempt = 0; attempt <= endpoint.max_retries; ++attempt) {
    outcome.attempts = attempt + 1;
    HttpResponse response;
    bool transport_failed = false;
    try {
      response = transport.post("/chat/completions", headers, body);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Transport) throw;
      transport_failed = true;
      last_failure = e.what();
    }
    if (!transport_failed) {
      if (response.status == 200) {
        outcome.text = extract_content(response.body);
        outcome.raw_body = std::move(response.body);
        return outcome;
      }
      last_failure = "status " + std::to_string(response.status);
      if (!retryable_status(response.status)) {
        fail(ErrorCode::Transport, "completion: " + last_failure + ": " + response.body);
      }
    }
    if (attempt < endpoint.max_retries) {
      transport.sleep_seconds(endpoint.backoff_base_seconds *
                              std::ldexp(1.0, attempt));
    }
  }
  fail(ErrorCode::Transport, "completion: retries exhausted (" + last_failure + ")");
}

std::string strip_code_fence(const std::string& text) {
  if (text.rfind("```", 0) != 0) return text;
  const std::size_t first_nl = text.find('\n');
  if (first_nl == std::string::npos) return text;
  std::string body = text.substr(first_nl + 1);
  // The closing fence must start a line and carry only whitespace after it.
  const std::size_t close = body.rfind("```");
  if (close == std::string::npos) return text;
  if (close != 0 && body[close - 1] != '\n') return text;
  for (std::size_t i = close + 3; i < body.size(); ++i) {
    const char c = body[i];
    if (c != ' ' && c != '\t' && c != '\r' && c != '\n') return text;
  }
  return body.substr(0, close == 0 ? 0 : close - 1);
}

TranscribeResult transcribe_images(const std::vector<std::string>& png_images,
                                   const EndpointConfig& endpoint,
                                   Transport& transport,
                                   const GenerationOptions& options,
                                   const std::string& instruction) {
  require(!png_images.empty(), ErrorCode::Precondition,
          "transcribe: at least one image required");
  const std::string prompt =
      instruction.empty() ? std::string(assets::prompt_transcribe()) : instruction;
  const nlohmann::json request =
      build_chat_request(endpoint.model, prompt, png_images, options);
  ChatOutcome outcome = chat_complete(transport, endpoint, request);

  TranscribeResult result;
  result.text = strip_code_fence(outcome.text);
  result.attempts = outcome.attempts;
  result.raw_body = std::move(outcome.raw_body);
  return result;
}

namespace {

std::string fill_template(std::string_view tmpl, const std::string& a,
                          const std::string& b) {
  std::string out;
  out.reserve(tmpl.size() + a.size() + b.size());
  for (std::size_t i = 0; i < tmpl.size();) {
    if (tmpl.substr(i, 3) == "{a}") {
      out += a;
      i += 3;
    } else if (tmpl.substr(i, 3) == "{b}") {
      out += b;
      i += 3;
    } else {
      out.push_back(tmpl[i]);
      ++i;
    }
  }
  return out;
}

int parse_judge_score(const std::string& reply) {
  std::size_t lo = 0, hi = reply.size();
  while (lo < hi && (reply[lo] == ' ' || reply[lo] == '\t' || reply[lo] == '\n' ||
                     reply[lo] == '\r')) {
    ++lo;
  }
  while (hi > lo && (reply[hi - 1] == ' ' || reply[hi - 1] == '\t' ||
                     reply[hi - 1] == '\n' || reply[hi - 1] == '\r')) {
    --hi;
  }
  int value = 0;
  const auto [ptr, ec] =
      std::from_chars(reply.data() + lo, reply.data() + hi, value);
  if (ec != std::errc() || ptr != reply.data() + hi || value < 0 || value > 100) {
    std::string shown = reply.substr(0, 200);
    fail(ErrorCode::JudgeFormat,
         "judge: reply is not an integer in [0, 100]: \"" + shown + "\"");
  }
  return value;
}

}  // namespace

double comparison_score(const std::string& candidate, const std::string& reference,
                        const EndpointConfig& endpoint, Transport& transport,
                        const std::string& prompt_template) {
  const std::string tmpl =
      prompt_template.empty() ? std::string(assets::prompt_judge()) : prompt_template;

  const GenerationOptions options;
  double sum = 0.0;
  for (int swap = 0; swap < 2; ++swap) {
    const std::string prompt = swap == 0 ? fill_template(tmpl, candidate, reference)
                                         : fill_template(tmpl, reference, candidate);
    const nlohmann::json request =
        build_chat_request(endpoint.model, prompt, {}, options);
    const ChatOutcome outcome = chat_complete(transport, endpoint, request);
    sum += parse_judge_score(outcome.text);
  }
  return sum / 2.0;
}

}  // namespace codeocr
