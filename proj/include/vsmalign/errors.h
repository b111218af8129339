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

#ifndef VSMALIGN_ERRORS_H_
#define VSMALIGN_ERRORS_H_

#include <chrono>
#include <stdexcept>
#include <string>
#include <vector>

namespace vsmalign {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input data (instrument files, config files, CSVs).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Non-retryable setup problem, e.g. a missing credential.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Failure talking to an endpoint. `status` is the HTTP status, or 0 when the
// request never produced a response (connect failure, timeout).
class TransportError : public Error {
 public:
  TransportError(const std::string& what, int status, bool retryable,
                 std::chrono::milliseconds retry_after = {})
      : Error(what),
        status_(status),
        retryable_(retryable),
        retry_after_(retry_after) {}

  int status() const { return status_; }
  bool retryable() const { return retryable_; }
  // Server-provided backoff hint (Retry-After); zero when absent.
  std::chrono::milliseconds retry_after() const { return retry_after_; }

 private:
  int status_;
  bool retryable_;
  std::chrono::milliseconds retry_after_;
};

class JournalError : public Error {
 public:
  using Error::Error;
};

// Raised when fewer complete answer sheets exist than the scoring floor.
class MinimumPopulationError : public Error {
 public:
  MinimumPopulationError(const std::string& what, int actual,
                         std::vector<int> incomplete_surveys = {})
      : Error(what),
        actual_(actual),
        incomplete_surveys_(std::move(incomplete_surveys)) {}

  int actual() const { return actual_; }
  const std::vector<int>& incomplete_surveys() const {
    return incomplete_surveys_;
  }

 private:
  int actual_;
  std::vector<int> incomplete_surveys_;
};

// Argument outside an operation's mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace vsmalign

#endif  // VSMALIGN_ERRORS_H_
