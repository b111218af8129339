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

#ifndef VSMALIGN_RUNNER_H_
#define VSMALIGN_RUNNER_H_

#include <condition_variable>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "vsmalign/client.h"
#include "vsmalign/corpus.h"

namespace vsmalign {

// The model x language x culture campaign and its sampling protocol.
struct RunMatrix {
  std::vector<EndpointConfig> models;
  std::vector<Language> languages{kAllLanguages.begin(), kAllLanguages.end()};
  std::vector<Culture> cultures{kAllCultures.begin(), kAllCultures.end()};
  int surveys_per_population = 20;
  int batch_size = 5;          // surveys dispatched together
  int runs_per_population = 4;  // batches per population
  std::filesystem::path output_dir = "out";
  bool allow_small = false;
  int parallel_cells = 1;  // populations executed at once

  // Throws ConfigError naming the violated constraint.
  void validate() const;
  // Survey slots a population may consume before it is declared failed.
  int survey_budget() const { return 3 * surveys_per_population; }
};

// Declarative JSON config; see examples in configs/. Credentials are never
// accepted inline, only environment-variable names.
RunMatrix parse_run_matrix(std::string_view document);
RunMatrix load_run_matrix(const std::filesystem::path& path);

// Counting gate that bounds in-flight requests to one endpoint.
class RequestGate {
 public:
  explicit RequestGate(int limit) : limit_(limit) {}

  void acquire();
  void release();
  int limit() const { return limit_; }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  int limit_;
  int in_flight_ = 0;
};

struct PopulationDescriptor {
  EndpointConfig endpoint;
  Language language = Language::kEnglish;
  Culture culture = Culture::kNone;

  std::string population_id() const {
    return population_label(endpoint.display_label(), language, culture);
  }
};

enum class PopulationStatus { kPending, kRunning, kComplete, kFailed };

std::string_view to_string(PopulationStatus status);

struct QuestionFailures {
  int failed = 0;  // surveys where the question exhausted its attempts
  int asked = 0;   // surveys that asked the question
};

struct PopulationReport {
  std::string population_id;
  std::string model_id;
  PopulationStatus status = PopulationStatus::kPending;
  std::filesystem::path journal;
  int complete_surveys = 0;
  int survey_slots_used = 0;
  long requests = 0;      // records in the journal after the run
  long new_requests = 0;  // requests issued by this invocation
  long retries = 0;
  long unparsable = 0;
  long transport_errors = 0;
  std::map<std::string, QuestionFailures> failure_histogram;
  std::string error;
};

struct RunManifest {
  RunMatrix matrix;
  std::string instrument_version;
  std::string started_at;
  std::string finished_at;
  std::vector<PopulationReport> populations;

  bool all_complete() const;
};

std::string manifest_to_json(const RunManifest& manifest);

// Administers one population: batch_size surveys at a time, each question a
// stateless request re-asked up to max_attempts_per_question on unparsable or
// failed answers. Surveys that cannot complete are replaced with fresh survey
// indices until the target is met or the survey budget is spent. Resumes from
// an existing journal without repeating complete surveys.
PopulationReport run_population(const RunMatrix& matrix,
                                const PopulationDescriptor& population,
                                Completer& completer,
                                const SurveyInstrument& instrument,
                                RequestGate* gate = nullptr);

using CompleterFactory =
    std::function<std::shared_ptr<Completer>(const EndpointConfig&)>;

// Runs every cell of the matrix. Cell failures are recorded in the manifest;
// configuration errors are thrown before any request is issued. Writes
// `<output_dir>/manifest.json`.
RunManifest run_matrix(const RunMatrix& matrix, const CompleterFactory& factory,
                       const SurveyInstrument& instrument = embedded_instrument());

}  // namespace vsmalign

#endif  // VSMALIGN_RUNNER_H_
