// Copyright 2026 The vsmalign Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vsmalign/client.h"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"
#include "json.hpp"
#include "vsmalign/errors.h"

namespace vsmalign {
namespace {

using nlohmann::json;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;    // without trailing slash
};

SplitUrl split_url(const std::string& url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw ConfigError("base_url must include a scheme: " + url);
  }
  auto path_begin = url.find('/', scheme_end + 3);
  SplitUrl out;
  out.origin = url.substr(0, path_begin);
  out.path = path_begin == std::string::npos ? "" : url.substr(path_begin);
  while (!out.path.empty() && out.path.back() == '/') out.path.pop_back();
  return out;
}

bool retryable_status(int status) {
  return status == 408 || status == 409 || status == 429 || status >= 500;
}

std::string format_temperature(double t) {
  std::ostringstream os;
  os << t;
  return os.str();
}

}  // namespace

void EndpointConfig::validate() const {
  if (model_id.empty()) throw ConfigError("endpoint: model_id is empty");
  if (!(temperature >= 0.0)) {
    throw ConfigError("endpoint " + model_id + ": temperature must be >= 0");
  }
  if (temperature_ceiling && !(*temperature_ceiling >= 0.0)) {
    throw ConfigError("endpoint " + model_id +
                      ": temperature_ceiling must be >= 0");
  }
  if (max_concurrency < 1) {
    throw ConfigError("endpoint " + model_id + ": max_concurrency must be >= 1");
  }
  if (max_attempts_per_question < 1) {
    throw ConfigError("endpoint " + model_id +
                      ": max_attempts_per_question must be >= 1");
  }
  if (!(timeout_s > 0.0)) {
    throw ConfigError("endpoint " + model_id + ": timeout_s must be > 0");
  }
  if (backoff_initial_ms < 0 || backoff_max_ms < backoff_initial_ms) {
    throw ConfigError("endpoint " + model_id + ": invalid backoff bounds");
  }
}

std::string chat_request_body(const std::string& model,
                              const MessagePair& messages, double temperature) {
  json body = {
      {"model", model},
      {"messages",
       json::array({{{"role", "system"}, {"content", messages.system}},
                    {{"role", "user"}, {"content", messages.user}}})},
      {"temperature", temperature},
      {"n", 1},
      {"stream", false},
  };
  return body.dump();
}

std::string chat_response_text(const std::string& body) {
  try {
    auto j = json::parse(body);
    const auto& content = j.at("choices").at(0).at("message").at("content");
    return content.is_null() ? std::string() : content.get<std::string>();
  } catch (const json::exception& e) {
    throw TransportError(std::string("malformed completion response: ") +
                             e.what(),
                         200, true);
  }
}

HttpCompleter::HttpCompleter(EndpointConfig config)
    : config_(std::move(config)), temperature_(config_.temperature) {
  config_.validate();
}

void HttpCompleter::preflight() const {
  config_.validate();
  split_url(config_.base_url);
  if (!config_.credential_env.empty()) {
    const char* key = std::getenv(config_.credential_env.c_str());
    if (key == nullptr || *key == '\0') {
      throw ConfigError("credential environment variable " +
                        config_.credential_env + " is not set");
    }
  }
}

Completion HttpCompleter::post(const MessagePair& messages,
                               double temperature) {
  preflight();
  auto url = split_url(config_.base_url);
  httplib::Client cli(url.origin);
  auto timeout = std::chrono::duration_cast<std::chrono::microseconds>(
      std::chrono::duration<double>(config_.timeout_s));
  cli.set_connection_timeout(timeout);
  cli.set_read_timeout(timeout);
  cli.set_write_timeout(timeout);

  httplib::Headers headers;
  if (!config_.credential_env.empty()) {
    headers.emplace("Authorization",
                    std::string("Bearer ") +
                        std::getenv(config_.credential_env.c_str()));
  }
  ++requests_;
  auto res = cli.Post(url.path + "/chat/completions", headers,
                      chat_request_body(config_.model_id, messages, temperature),
                      "application/json");
  if (!res) {
    throw TransportError("request failed: " + httplib::to_string(res.error()),
                         0, true);
  }
  if (res->status != 200) {
    std::chrono::milliseconds hint{};
    if (res->has_header("Retry-After")) {
      try {
        hint = std::chrono::milliseconds(static_cast<long long>(
            std::stod(res->get_header_value("Retry-After")) * 1000.0));
      } catch (const std::exception&) {
        // HTTP-date form; ignore.
      }
    }
    throw TransportError("HTTP " + std::to_string(res->status) + ": " +
                             res->body.substr(0, 512),
                         res->status, retryable_status(res->status), hint);
  }
  return Completion{chat_response_text(res->body), temperature, {}};
}

Completion HttpCompleter::complete(const CompletionRequest& request) {
  double t = temperature_.load();
  std::string note;
  if (t != config_.temperature) {
    note = "temperature clamped from " + format_temperature(config_.temperature) +
           " to " + format_temperature(t);
  }
  try {
    auto c = post(request.messages, t);
    c.annotation = note;
    return c;
  } catch (const TransportError& e) {
    bool rejected_temperature =
        e.status() == 400 &&
        std::string_view(e.what()).find("temperature") != std::string_view::npos;
    if (!rejected_temperature || !config_.temperature_ceiling ||
        *config_.temperature_ceiling >= t) {
      throw;
    }
  }
  double clamped = *config_.temperature_ceiling;
  temperature_.store(clamped);
  auto c = post(request.messages, clamped);
  c.annotation = "temperature clamped from " +
                 format_temperature(config_.temperature) + " to " +
                 format_temperature(clamped) + " (endpoint rejected " +
                 format_temperature(t) + ")";
  return c;
}

std::string complete(const EndpointConfig& config, const MessagePair& messages) {
  HttpCompleter completer(config);
  CompletionRequest request;
  request.messages = messages;
  return completer.complete(request).text;
}

void MockRespondentSpec::validate() const {
  for (const auto& [q, weights] : distributions) {
    double sum = 0.0;
    for (double w : weights) {
      if (!(w >= 0.0)) {
        throw ValidationError("mock distribution for " + q.str() +
                              " has a negative weight");
      }
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw ValidationError("mock distribution for " + q.str() +
                            " sums to " + std::to_string(sum));
    }
  }
}

double MockRespondentSpec::expected_answer(QuestionId q) const {
  auto it = distributions.find(q);
  if (it == distributions.end()) {
    throw ValidationError("mock respondent has no distribution for " + q.str());
  }
  double e = 0.0;
  for (int k = 0; k < 5; ++k) e += (k + 1) * it->second[k];
  return e;
}

MockRespondentSpec parse_mock_spec(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("mock spec is not valid JSON: ") +
                          e.what());
  }
  auto weights_of = [](const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 5) {
      throw ValidationError(where + ": expected 5 weights");
    }
    std::array<double, 5> w{};
    for (int k = 0; k < 5; ++k) w[k] = j[k].get<double>();
    return w;
  };
  MockRespondentSpec spec;
  spec.seed = doc.value("seed", std::uint64_t{0});
  if (auto it = doc.find("distributions"); it != doc.end()) {
    for (auto& [key, value] : it->items()) {
      auto q = QuestionId::parse(key);
      if (!q) throw ValidationError("mock spec: unknown question id " + key);
      spec.distributions[*q] = weights_of(value, key);
    }
  }
  if (auto it = doc.find("default"); it != doc.end()) {
    auto w = weights_of(*it, "default");
    for (QuestionId q : all_questions()) spec.distributions.try_emplace(q, w);
  }
  spec.validate();
  return spec;
}

MockRespondentSpec load_mock_spec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read mock spec: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_mock_spec(buf.str());
}

std::string complete_mock(const MockRespondentSpec& spec, QuestionId question,
                          std::uint64_t draw_index) {
  auto it = spec.distributions.find(question);
  if (it == spec.distributions.end()) {
    throw ValidationError("mock respondent has no distribution for " +
                          question.str());
  }
  std::uint64_t h = splitmix64(
      spec.seed ^ splitmix64(static_cast<std::uint64_t>(question.number()) ^
                             splitmix64(draw_index)));
  double u = static_cast<double>(h >> 11) * 0x1.0p-53;
  const auto& w = it->second;
  int answer = 5;
  double acc = 0.0;
  for (int k = 0; k < 5; ++k) {
    acc += w[k];
    if (u < acc && w[k] > 0.0) {
      answer = k + 1;
      break;
    }
  }
  // Rounding can leave u >= acc; fall back to the last positive weight.
  if (acc <= u) {
    for (int k = 4; k >= 0; --k) {
      if (w[k] > 0.0) {
        answer = k + 1;
        break;
      }
    }
  }
  return "Your score: " + std::to_string(answer);
}

std::string complete_mock(const MockRespondentSpec& spec,
                          std::string_view question_id,
                          std::uint64_t draw_index) {
  auto q = QuestionId::parse(question_id);
  if (!q) {
    throw ValidationError("unknown question id: " + std::string(question_id));
  }
  return complete_mock(spec, *q, draw_index);
}

MockCompleter::MockCompleter(MockRespondentSpec spec, std::string model_id)
    : spec_(std::move(spec)), model_id_(std::move(model_id)) {
  spec_.validate();
}

std::uint64_t MockCompleter::draw_index(const CompletionRequest& request) {
  return fnv1a64(request.population_id) ^
         splitmix64((static_cast<std::uint64_t>(request.survey_index) << 16) |
                    static_cast<std::uint64_t>(request.attempt));
}

Completion MockCompleter::complete(const CompletionRequest& request) {
  return Completion{
      complete_mock(spec_, request.question_id, draw_index(request)), 0.0, {}};
}

Backoff::Backoff(std::chrono::milliseconds initial,
                 std::chrono::milliseconds max, std::uint64_t seed)
    : initial_(initial), max_(max), rng_(seed) {}

std::chrono::milliseconds Backoff::delay(int retry,
                                         std::chrono::milliseconds hint) {
  double cap = static_cast<double>(initial_.count()) *
               std::pow(2.0, std::max(0, retry - 1));
  cap = std::min(cap, static_cast<double>(max_.count()));
  std::uniform_real_distribution<double> jitter(0.0, cap);
  auto d = std::chrono::milliseconds(
      static_cast<long long>(cap > 0.0 ? jitter(rng_) : 0.0));
  return std::max(d, hint);
}

}  // namespace vsmalign
