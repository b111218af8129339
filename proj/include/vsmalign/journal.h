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

#ifndef VSMALIGN_JOURNAL_H_
#define VSMALIGN_JOURNAL_H_

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace vsmalign {

// One prompt/response exchange. The key (population_id, survey_index,
// question_id, attempt) is unique within a journal.
struct PromptRecord {
  std::string population_id;
  int survey_index = 0;  // 0-based within the population
  std::string question_id;
  int attempt = 1;  // 1-based
  std::string system_text;
  std::string user_text;
  std::string raw_response;
  std::optional<int> parsed_score;  // 1..5 when present
  std::string timestamp;            // UTC, ISO 8601 with milliseconds
  std::string model_id;
  // Free-form run note, e.g. a clamped temperature or a transport failure.
  std::string annotation;

  friend bool operator==(const PromptRecord&, const PromptRecord&) = default;
};

// Current UTC time as "YYYY-MM-DDTHH:MM:SS.mmmZ".
std::string utc_timestamp();

// One JSON object, no trailing newline.
std::string serialize_record(const PromptRecord& record);
// Throws JournalError on malformed input.
PromptRecord deserialize_record(std::string_view line);

// `<dir>/<population_id>.journal`.
std::filesystem::path journal_path(const std::filesystem::path& dir,
                                   const std::string& population_id);

// Append-only journal writer. Each record is emitted with a single write(2)
// on an O_APPEND descriptor under an exclusive flock, so records from
// concurrent writers (threads or processes) never interleave.
class JournalWriter {
 public:
  explicit JournalWriter(const std::filesystem::path& path);
  ~JournalWriter();

  JournalWriter(const JournalWriter&) = delete;
  JournalWriter& operator=(const JournalWriter&) = delete;

  void append(const PromptRecord& record);
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  int fd_ = -1;
  std::mutex mu_;
};

// Returns records in append order. A missing file yields an empty journal
// (with a warning on stderr). Any unparsable line, including a final line
// without its terminating newline, raises "corrupt record at line N".
// Duplicate keys are also rejected.
std::vector<PromptRecord> journal_load(const std::filesystem::path& path);

}  // namespace vsmalign

#endif  // VSMALIGN_JOURNAL_H_
