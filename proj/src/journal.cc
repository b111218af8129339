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

#include "vsmalign/journal.h"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <ctime>
#include <fstream>
#include <iostream>
#include <set>
#include <tuple>

#include "json.hpp"
#include "vsmalign/errors.h"

namespace vsmalign {

using nlohmann::json;

std::string utc_timestamp() {
  using namespace std::chrono;
  auto now = system_clock::now();
  auto secs = time_point_cast<seconds>(now);
  auto ms = duration_cast<milliseconds>(now - secs).count();
  std::time_t t = system_clock::to_time_t(secs);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[40];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%S", &tm);
  char out[48];
  std::snprintf(out, sizeof(out), "%s.%03dZ", buf, static_cast<int>(ms));
  return out;
}

std::string serialize_record(const PromptRecord& r) {
  // Field order is fixed so re-serialization is byte-identical.
  json j = json::object();
  j["population_id"] = r.population_id;
  j["survey_index"] = r.survey_index;
  j["question_id"] = r.question_id;
  j["attempt"] = r.attempt;
  j["system_text"] = r.system_text;
  j["user_text"] = r.user_text;
  j["raw_response"] = r.raw_response;
  j["parsed_score"] = r.parsed_score ? json(*r.parsed_score) : json(nullptr);
  j["timestamp"] = r.timestamp;
  j["model_id"] = r.model_id;
  j["annotation"] = r.annotation;
  // Invalid UTF-8 from an endpoint is replaced rather than aborting the run.
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

PromptRecord deserialize_record(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw JournalError(e.what());
  }
  try {
    PromptRecord r;
    r.population_id = j.at("population_id").get<std::string>();
    r.survey_index = j.at("survey_index").get<int>();
    r.question_id = j.at("question_id").get<std::string>();
    r.attempt = j.at("attempt").get<int>();
    r.system_text = j.at("system_text").get<std::string>();
    r.user_text = j.at("user_text").get<std::string>();
    r.raw_response = j.at("raw_response").get<std::string>();
    const auto& score = j.at("parsed_score");
    if (!score.is_null()) r.parsed_score = score.get<int>();
    r.timestamp = j.at("timestamp").get<std::string>();
    r.model_id = j.at("model_id").get<std::string>();
    r.annotation = j.value("annotation", std::string());
    if (r.parsed_score && (*r.parsed_score < 1 || *r.parsed_score > 5)) {
      throw JournalError("parsed_score out of range");
    }
    if (r.attempt < 1 || r.survey_index < 0) {
      throw JournalError("attempt/survey_index out of range");
    }
    return r;
  } catch (const json::exception& e) {
    throw JournalError(e.what());
  }
}

std::filesystem::path journal_path(const std::filesystem::path& dir,
                                   const std::string& population_id) {
  return dir / (population_id + ".journal");
}

JournalWriter::JournalWriter(const std::filesystem::path& path) : path_(path) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  fd_ = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd_ < 0) {
    throw JournalError("cannot open journal " + path.string() + ": " +
                       std::strerror(errno));
  }
}

JournalWriter::~JournalWriter() {
  if (fd_ >= 0) ::close(fd_);
}

void JournalWriter::append(const PromptRecord& record) {
  std::string line = serialize_record(record);
  line.push_back('\n');
  std::lock_guard<std::mutex> lock(mu_);
  if (::flock(fd_, LOCK_EX) != 0) {
    throw JournalError("cannot lock journal " + path_.string());
  }
  const char* p = line.data();
  std::size_t left = line.size();
  while (left > 0) {
    ssize_t n = ::write(fd_, p, left);
    if (n < 0) {
      if (errno == EINTR) continue;
      int err = errno;
      ::flock(fd_, LOCK_UN);
      throw JournalError("journal write failed: " +
                         std::string(std::strerror(err)));
    }
    p += n;
    left -= static_cast<std::size_t>(n);
  }
  ::flock(fd_, LOCK_UN);
}

std::vector<PromptRecord> journal_load(const std::filesystem::path& path) {
  std::vector<PromptRecord> records;
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "warning: journal " << path.string()
              << " not found; treating as empty\n";
    return records;
  }
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  std::set<std::tuple<std::string, int, std::string, int>> keys;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos < content.size()) {
    ++line_no;
    auto nl = content.find('\n', pos);
    auto corrupt = [&](const std::string& why) {
      return JournalError("corrupt record at line " + std::to_string(line_no) +
                          " of " + path.string() + ": " + why);
    };
    if (nl == std::string::npos) throw corrupt("truncated (no newline)");
    std::string_view line(content.data() + pos, nl - pos);
    pos = nl + 1;
    PromptRecord r;
    try {
      r = deserialize_record(line);
    } catch (const JournalError& e) {
      throw corrupt(e.what());
    }
    if (!keys.emplace(r.population_id, r.survey_index, r.question_id, r.attempt)
             .second) {
      throw corrupt("duplicate record key");
    }
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace vsmalign
