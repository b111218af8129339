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

#include "vsmalign/runner.h"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "vsmalign/errors.h"
#include "vsmalign/journal.h"
#include "vsmalign/parser.h"
#include "vsmalign/scoring.h"

namespace vsmalign {
namespace {

using nlohmann::json;

Language language_field(const json& j) {
  auto s = j.get<std::string>();
  if (auto l = parse_language(s)) return *l;
  if (auto l = language_from_code(s)) return *l;
  throw ConfigError("unknown language: " + s);
}

Culture culture_field(const json& j) {
  auto s = j.get<std::string>();
  if (auto c = parse_culture(s)) return *c;
  if (!s.empty()) {
    if (auto c = culture_from_code(s)) return *c;
  }
  throw ConfigError("unknown culture: " + s);
}

EndpointConfig endpoint_from_json(const json& j) {
  for (const char* forbidden : {"api_key", "key", "token", "secret"}) {
    if (j.contains(forbidden)) {
      throw ConfigError(std::string("model entry contains '") + forbidden +
                        "'; credentials are read from environment variables "
                        "named by credential_env");
    }
  }
  EndpointConfig e;
  e.model_id = j.at("model_id").get<std::string>();
  e.label = j.value("label", std::string());
  e.base_url = j.value("base_url", e.base_url);
  e.credential_env = j.value("credential_env", std::string());
  e.temperature = j.value("temperature", e.temperature);
  if (j.contains("temperature_ceiling")) {
    e.temperature_ceiling = j.at("temperature_ceiling").get<double>();
  }
  e.max_concurrency = j.value("max_concurrency", e.max_concurrency);
  e.timeout_s = j.value("timeout_s", e.timeout_s);
  e.max_attempts_per_question =
      j.value("max_attempts_per_question", e.max_attempts_per_question);
  e.backoff_initial_ms = j.value("backoff_initial_ms", e.backoff_initial_ms);
  e.backoff_max_ms = j.value("backoff_max_ms", e.backoff_max_ms);
  return e;
}

json endpoint_to_json(const EndpointConfig& e) {
  json j = {{"label", e.display_label()},
            {"model_id", e.model_id},
            {"base_url", e.base_url},
            {"credential_env", e.credential_env},
            {"temperature", e.temperature},
            {"max_concurrency", e.max_concurrency},
            {"timeout_s", e.timeout_s},
            {"max_attempts_per_question", e.max_attempts_per_question}};
  if (e.temperature_ceiling) j["temperature_ceiling"] = *e.temperature_ceiling;
  return j;
}

// Shared state for one batch of surveys.
struct BatchState {
  std::vector<std::atomic<bool>> survey_failed;
  std::atomic<std::size_t> next_task{0};
  std::atomic<bool> fatal{false};
  std::mutex mu;  // guards report counters and fatal_message
  std::string fatal_message;

  explicit BatchState(std::size_t surveys) : survey_failed(surveys) {}
};

class PopulationSession {
 public:
  PopulationSession(const PopulationDescriptor& pop,
                    Completer& completer, const SurveyInstrument& instrument,
                    RequestGate* gate, JournalWriter& writer,
                    PopulationReport& report)
      : pop_(pop),
        completer_(completer),
        instrument_(instrument),
        gate_(gate),
        writer_(writer),
        report_(report) {}

  // Returns how many of the surveys completed. Sets report_.error on a fatal
  // endpoint error.
  int run_batch(int first_index, int count) {
    BatchState state(count);
    const std::size_t tasks = static_cast<std::size_t>(count) * kQuestionCount;
    int workers = std::min<int>(pop_.endpoint.max_concurrency,
                                static_cast<int>(tasks));
    auto work = [&] {
      for (;;) {
        std::size_t t = state.next_task.fetch_add(1);
        if (t >= tasks || state.fatal.load()) return;
        int slot = static_cast<int>(t / kQuestionCount);
        QuestionId q(static_cast<int>(t % kQuestionCount) + 1);
        if (state.survey_failed[slot].load()) continue;
        if (!ask(state, first_index + slot, q)) state.survey_failed[slot] = true;
      }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();

    if (state.fatal.load()) {
      report_.error = state.fatal_message;
      return 0;
    }
    int done = 0;
    for (auto& f : state.survey_failed) done += !f.load();
    return done;
  }

 private:
  bool ask(BatchState& state, int survey_index, QuestionId q) {
    const auto& spec = instrument_.question(q);
    const MessagePair messages =
        render_prompt(instrument_, spec, pop_.language, pop_.culture);
    const std::string qid = q.str();
    const int max_attempts = pop_.endpoint.max_attempts_per_question;
    Backoff backoff(std::chrono::milliseconds(pop_.endpoint.backoff_initial_ms),
                    std::chrono::milliseconds(pop_.endpoint.backoff_max_ms));
    {
      std::lock_guard<std::mutex> lock(state.mu);
      report_.failure_histogram[qid].asked++;
    }

    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
      if (state.fatal.load()) return false;
      CompletionRequest req{messages, pop_.population_id(), survey_index, q,
                            attempt};
      PromptRecord rec;
      rec.population_id = req.population_id;
      rec.survey_index = survey_index;
      rec.question_id = qid;
      rec.attempt = attempt;
      rec.system_text = messages.system;
      rec.user_text = messages.user;
      rec.model_id = completer_.model_id();

      std::optional<TransportError> transport;
      Completion completion;
      if (gate_) gate_->acquire();
      try {
        completion = completer_.complete(req);
      } catch (const TransportError& e) {
        transport = e;
      } catch (const ConfigError& e) {
        if (gate_) gate_->release();
        fail(state, e.what());
        return false;
      }
      if (gate_) gate_->release();
      rec.timestamp = utc_timestamp();

      bool parsed = false;
      if (transport) {
        rec.annotation = std::string("transport error: ") + transport->what();
      } else {
        rec.raw_response = completion.text;
        rec.annotation = completion.annotation;
        auto result = parse_likert(completion.text, pop_.language);
        if (result) {
          rec.parsed_score = result.value();
          parsed = true;
        } else {
          std::string note = std::string("parse: ") +
                             std::string(to_string(result.failure())) + " (" +
                             result.detail() + ")";
          rec.annotation = rec.annotation.empty() ? note
                                                  : rec.annotation + "; " + note;
        }
      }
      writer_.append(rec);
      {
        std::lock_guard<std::mutex> lock(state.mu);
        report_.requests++;
        report_.new_requests++;
        if (attempt > 1) report_.retries++;
        if (transport) report_.transport_errors++;
        if (!transport && !parsed) report_.unparsable++;
      }
      if (parsed) return true;
      if (transport) {
        if (!transport->retryable()) {
          fail(state, transport->what());
          return false;
        }
        if (attempt < max_attempts) {
          std::this_thread::sleep_for(
              backoff.delay(attempt, transport->retry_after()));
        }
      }
    }
    std::lock_guard<std::mutex> lock(state.mu);
    report_.failure_histogram[qid].failed++;
    return false;
  }

  void fail(BatchState& state, const std::string& message) {
    std::lock_guard<std::mutex> lock(state.mu);
    if (!state.fatal.exchange(true)) state.fatal_message = message;
  }

  const PopulationDescriptor& pop_;
  Completer& completer_;
  const SurveyInstrument& instrument_;
  RequestGate* gate_;
  JournalWriter& writer_;
  PopulationReport& report_;
};

void write_manifest(const RunManifest& manifest) {
  std::filesystem::create_directories(manifest.matrix.output_dir);
  auto path = manifest.matrix.output_dir / "manifest.json";
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << manifest_to_json(manifest) << "\n";
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

void RunMatrix::validate() const {
  if (models.empty()) throw ConfigError("run matrix: empty model list");
  if (languages.empty()) throw ConfigError("run matrix: no languages");
  if (cultures.empty()) throw ConfigError("run matrix: no cultures");
  std::set<std::string> labels;
  for (const auto& m : models) {
    m.validate();
    if (!labels.insert(m.display_label()).second) {
      throw ConfigError("run matrix: duplicate model label " + m.display_label());
    }
  }
  if (batch_size < 1 || runs_per_population < 1) {
    throw ConfigError("run matrix: batch_size and runs_per_population must be >= 1");
  }
  if (batch_size * runs_per_population != surveys_per_population) {
    throw ConfigError("run matrix: batch_size x runs_per_population (" +
                      std::to_string(batch_size * runs_per_population) +
                      ") must equal surveys_per_population (" +
                      std::to_string(surveys_per_population) + ")");
  }
  if (surveys_per_population < 1 ||
      (surveys_per_population < kMinimumPopulation && !allow_small)) {
    throw ConfigError("run matrix: surveys_per_population must be >= 20 "
                      "(use allow_small to override)");
  }
  if (parallel_cells < 1) throw ConfigError("run matrix: parallel_cells must be >= 1");
}

RunMatrix parse_run_matrix(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("run config is not valid JSON: ") + e.what());
  }
  RunMatrix m;
  try {
    for (const auto& entry : doc.at("models")) {
      m.models.push_back(endpoint_from_json(entry));
    }
    if (doc.contains("languages")) {
      m.languages.clear();
      for (const auto& l : doc["languages"]) m.languages.push_back(language_field(l));
    }
    if (doc.contains("cultures")) {
      m.cultures.clear();
      for (const auto& c : doc["cultures"]) m.cultures.push_back(culture_field(c));
    }
    m.surveys_per_population =
        doc.value("surveys_per_population", m.surveys_per_population);
    m.batch_size = doc.value("batch_size", m.batch_size);
    m.runs_per_population = doc.value("runs_per_population", m.runs_per_population);
    m.output_dir = doc.value("output_dir", m.output_dir.string());
    m.allow_small = doc.value("allow_small", m.allow_small);
    m.parallel_cells = doc.value("parallel_cells", m.parallel_cells);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("run config: ") + e.what());
  }
  m.validate();
  return m;
}

RunMatrix load_run_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read run config: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_matrix(buf.str());
}

void RequestGate::acquire() {
  std::unique_lock<std::mutex> lock(mu_);
  cv_.wait(lock, [&] { return in_flight_ < limit_; });
  ++in_flight_;
}

void RequestGate::release() {
  {
    std::lock_guard<std::mutex> lock(mu_);
    --in_flight_;
  }
  cv_.notify_one();
}

std::string_view to_string(PopulationStatus status) {
  switch (status) {
    case PopulationStatus::kPending: return "pending";
    case PopulationStatus::kRunning: return "running";
    case PopulationStatus::kComplete: return "complete";
    case PopulationStatus::kFailed: return "failed";
  }
  return "pending";
}

bool RunManifest::all_complete() const {
  return std::all_of(populations.begin(), populations.end(),
                     [](const PopulationReport& p) {
                       return p.status == PopulationStatus::kComplete;
                     });
}

std::string manifest_to_json(const RunManifest& m) {
  json models = json::array();
  for (const auto& e : m.matrix.models) models.push_back(endpoint_to_json(e));
  json langs = json::array();
  for (auto l : m.matrix.languages) langs.push_back(to_string(l));
  json cults = json::array();
  for (auto c : m.matrix.cultures) cults.push_back(to_string(c));
  json pops = json::array();
  for (const auto& p : m.populations) {
    json hist = json::object();
    for (const auto& [q, f] : p.failure_histogram) {
      if (f.failed == 0) continue;
      hist[q] = {{"failed", f.failed},
                 {"asked", f.asked},
                 {"failure_rate",
                  f.asked ? static_cast<double>(f.failed) / f.asked : 0.0}};
    }
    pops.push_back({{"population_id", p.population_id},
                    {"model_id", p.model_id},
                    {"status", to_string(p.status)},
                    {"journal", p.journal.filename().string()},
                    {"complete_surveys", p.complete_surveys},
                    {"survey_slots_used", p.survey_slots_used},
                    {"requests", p.requests},
                    {"new_requests", p.new_requests},
                    {"retries", p.retries},
                    {"unparsable", p.unparsable},
                    {"transport_errors", p.transport_errors},
                    {"failure_histogram", hist},
                    {"error", p.error}});
  }
  json doc = {
      {"matrix",
       {{"models", models},
        {"languages", langs},
        {"cultures", cults},
        {"surveys_per_population", m.matrix.surveys_per_population},
        {"batch_size", m.matrix.batch_size},
        {"runs_per_population", m.matrix.runs_per_population},
        {"allow_small", m.matrix.allow_small}}},
      {"instrument_version", m.instrument_version},
      {"started_at", m.started_at},
      {"finished_at", m.finished_at},
      {"populations", pops},
  };
  return doc.dump(2);
}

PopulationReport run_population(const RunMatrix& matrix,
                                const PopulationDescriptor& population,
                                Completer& completer,
                                const SurveyInstrument& instrument,
                                RequestGate* gate) {
  PopulationReport report;
  report.population_id = population.population_id();
  report.model_id = completer.model_id();
  report.journal = journal_path(matrix.output_dir, report.population_id);
  report.status = PopulationStatus::kRunning;

  std::vector<PromptRecord> existing;
  if (std::filesystem::exists(report.journal)) {
    existing = journal_load(report.journal);
  }
  int next_index = 0;
  for (const auto& r : existing) {
    if (r.population_id != report.population_id) continue;
    next_index = std::max(next_index, r.survey_index + 1);
    report.requests++;
  }
  const int target = matrix.surveys_per_population;
  int complete = static_cast<int>(
      collect_population(existing, report.population_id).sheets.size());

  if (complete < target) {
    JournalWriter writer(report.journal);
    PopulationSession session(population, completer, instrument, gate,
                              writer, report);
    const int budget = matrix.survey_budget();
    while (complete < target && next_index < budget && report.error.empty()) {
      int n = std::min({matrix.batch_size, target - complete, budget - next_index});
      complete += session.run_batch(next_index, n);
      next_index += n;
    }
  }
  report.complete_surveys = complete;
  report.survey_slots_used = next_index;
  report.status = complete >= target ? PopulationStatus::kComplete
                                     : PopulationStatus::kFailed;
  if (report.status == PopulationStatus::kFailed && report.error.empty()) {
    report.error = "survey budget of " + std::to_string(matrix.survey_budget()) +
                   " exhausted with " + std::to_string(complete) +
                   " complete surveys";
  }
  return report;
}

RunManifest run_matrix(const RunMatrix& matrix, const CompleterFactory& factory,
                       const SurveyInstrument& instrument) {
  matrix.validate();
  RunManifest manifest;
  manifest.matrix = matrix;
  manifest.instrument_version = instrument.version();
  manifest.started_at = utc_timestamp();

  std::vector<std::shared_ptr<Completer>> completers;
  std::vector<std::unique_ptr<RequestGate>> gates;
  for (const auto& model : matrix.models) {
    auto c = factory(model);
    c->preflight();
    completers.push_back(std::move(c));
    gates.push_back(std::make_unique<RequestGate>(model.max_concurrency));
  }

  struct Cell {
    std::size_t model;
    PopulationDescriptor descriptor;
  };
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < matrix.models.size(); ++i) {
    for (Language l : matrix.languages) {
      for (Culture c : matrix.cultures) {
        cells.push_back({i, {matrix.models[i], l, c}});
        PopulationReport pending;
        pending.population_id = cells.back().descriptor.population_id();
        pending.model_id = matrix.models[i].model_id;
        pending.journal = journal_path(matrix.output_dir, pending.population_id);
        manifest.populations.push_back(pending);
      }
    }
  }

  std::mutex manifest_mu;
  write_manifest(manifest);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t k = next.fetch_add(1);
      if (k >= cells.size()) return;
      const auto& cell = cells[k];
      {
        std::lock_guard<std::mutex> lock(manifest_mu);
        manifest.populations[k].status = PopulationStatus::kRunning;
        write_manifest(manifest);
      }
      PopulationReport report;
      try {
        report = run_population(matrix, cell.descriptor, *completers[cell.model],
                                instrument, gates[cell.model].get());
      } catch (const std::exception& e) {
        report.population_id = cell.descriptor.population_id();
        report.model_id = cell.descriptor.endpoint.model_id;
        report.journal = journal_path(matrix.output_dir, report.population_id);
        report.status = PopulationStatus::kFailed;
        report.error = e.what();
      }
      std::lock_guard<std::mutex> lock(manifest_mu);
      manifest.populations[k] = std::move(report);
      write_manifest(manifest);
    }
  };
  int threads = std::min<int>(matrix.parallel_cells, static_cast<int>(cells.size()));
  std::vector<std::thread> pool;
  for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  manifest.finished_at = utc_timestamp();
  write_manifest(manifest);
  return manifest;
}

}  // namespace vsmalign
