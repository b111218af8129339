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

#ifndef VSMALIGN_CLIENT_H_
#define VSMALIGN_CLIENT_H_

#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>

#include "vsmalign/corpus.h"

namespace vsmalign {

struct EndpointConfig {
  std::string label;     // population label prefix; defaults to model_id
  std::string model_id;  // provider model name
  std::string base_url = "https://api.openai.com/v1";
  // Name of the environment variable holding the API key. Empty means the
  // endpoint takes no credential.
  std::string credential_env;
  double temperature = 2.0;
  // Used only when the endpoint rejects `temperature`.
  std::optional<double> temperature_ceiling;
  int max_concurrency = 4;
  double timeout_s = 60.0;
  int max_attempts_per_question = 5;
  int backoff_initial_ms = 500;
  int backoff_max_ms = 30000;

  const std::string& display_label() const {
    return label.empty() ? model_id : label;
  }
  // Throws ConfigError on temperature < 0, max_concurrency < 1, etc.
  void validate() const;
};

// Everything a backend may need to know about the request it serves.
struct CompletionRequest {
  MessagePair messages;
  std::string population_id;
  int survey_index = 0;
  QuestionId question_id{1};
  int attempt = 1;
};

struct Completion {
  std::string text;
  double temperature = 0.0;  // temperature actually sent
  std::string annotation;    // non-empty when the request was altered
};

// A chat-completion backend. Implementations must be safe to call from
// several threads at once.
class Completer {
 public:
  virtual ~Completer() = default;

  // Fails fast with ConfigError before any request is made.
  virtual void preflight() const {}
  // Throws TransportError (retryable or not) or ConfigError.
  virtual Completion complete(const CompletionRequest& request) = 0;
  virtual std::string model_id() const = 0;
};

// OpenAI/DeepSeek-style `POST {base_url}/chat/completions`: one system and
// one user message, n = 1, no history.
class HttpCompleter : public Completer {
 public:
  explicit HttpCompleter(EndpointConfig config);

  void preflight() const override;
  Completion complete(const CompletionRequest& request) override;
  std::string model_id() const override { return config_.model_id; }

  const EndpointConfig& config() const { return config_; }
  std::uint64_t request_count() const { return requests_.load(); }

 private:
  Completion post(const MessagePair& messages, double temperature);

  EndpointConfig config_;
  std::atomic<double> temperature_;
  std::atomic<std::uint64_t> requests_{0};
};

// Request body for one chat completion.
std::string chat_request_body(const std::string& model,
                              const MessagePair& messages, double temperature);
// Extracts choices[0].message.content; throws TransportError when absent.
std::string chat_response_text(const std::string& body);

// Single-shot completion against a live endpoint.
std::string complete(const EndpointConfig& config, const MessagePair& messages);

// Offline respondent: a categorical answer distribution per question.
struct MockRespondentSpec {
  std::map<QuestionId, std::array<double, 5>> distributions;
  std::uint64_t seed = 0;

  // Throws ValidationError unless every distribution is non-negative and sums
  // to 1 within 1e-9.
  void validate() const;
  // Expected answer E[q] under the distribution.
  double expected_answer(QuestionId q) const;
};

// JSON: {"seed": 7, "default": [w1..w5], "distributions": {"m01": [...]}}.
// "default" fills any question not listed.
MockRespondentSpec parse_mock_spec(std::string_view document);
MockRespondentSpec load_mock_spec(const std::filesystem::path& path);

// Draw keyed purely on (seed, question, draw_index), rendered as
// "Your score: N". Throws ValidationError for an unknown question.
std::string complete_mock(const MockRespondentSpec& spec, QuestionId question,
                          std::uint64_t draw_index);
// Same, by textual id ("m07").
std::string complete_mock(const MockRespondentSpec& spec,
                          std::string_view question_id,
                          std::uint64_t draw_index);

class MockCompleter : public Completer {
 public:
  explicit MockCompleter(MockRespondentSpec spec,
                         std::string model_id = "mock-respondent");

  Completion complete(const CompletionRequest& request) override;
  std::string model_id() const override { return model_id_; }

  // Maps a request to the draw index used for complete_mock.
  static std::uint64_t draw_index(const CompletionRequest& request);

 private:
  MockRespondentSpec spec_;
  std::string model_id_;
};

// Exponential backoff with full jitter; honours a server Retry-After hint
// when it is longer.
class Backoff {
 public:
  Backoff(std::chrono::milliseconds initial, std::chrono::milliseconds max,
          std::uint64_t seed = std::random_device{}());

  // Delay before retry number `retry` (1-based).
  std::chrono::milliseconds delay(int retry,
                                  std::chrono::milliseconds hint = {});

 private:
  std::chrono::milliseconds initial_;
  std::chrono::milliseconds max_;
  std::mt19937_64 rng_;
};

}  // namespace vsmalign

#endif  // VSMALIGN_CLIENT_H_
