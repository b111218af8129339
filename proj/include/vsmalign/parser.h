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

#ifndef VSMALIGN_PARSER_H_
#define VSMALIGN_PARSER_H_

#include <optional>
#include <string>
#include <string_view>

#include "vsmalign/corpus.h"

namespace vsmalign {

enum class ExtractionRule {
  kScoreKeyword,
  kExactInteger,
  kSoleInteger,
  kDigitWord,
};

enum class Confidence { kHigh, kLow };

std::string_view to_string(ExtractionRule rule);

struct ParsedScore {
  int value = 0;  // always 1..5
  ExtractionRule rule = ExtractionRule::kExactInteger;
  Confidence confidence = Confidence::kHigh;
};

enum class ParseFailure {
  kUnparsable,  // no rule fired
  kAmbiguous,   // several distinct in-range integers and no score keyword
};

std::string_view to_string(ParseFailure failure);

// Either a score or the reason none could be extracted. Both failure kinds
// mean "ask the question again".
class ParseResult {
 public:
  ParseResult(ParsedScore score) : score_(score) {}  // NOLINT
  ParseResult(ParseFailure failure, std::string detail)
      : failure_(failure), detail_(std::move(detail)) {}

  bool ok() const { return score_.has_value(); }
  explicit operator bool() const { return ok(); }

  const ParsedScore& score() const { return *score_; }
  int value() const { return score_->value; }
  ParseFailure failure() const { return failure_; }
  const std::string& detail() const { return detail_; }

 private:
  std::optional<ParsedScore> score_;
  ParseFailure failure_ = ParseFailure::kUnparsable;
  std::string detail_;
};

// Extracts a 1-5 Likert answer from free text. Rules, first match wins:
//   1. an integer right after "score" / "分数" / "评分" (punctuation and
//      short connectives such as "is", "of", "是", "为" may intervene);
//   2. the whole response is one integer after trimming;
//   3. exactly one distinct in-range integer appears anywhere;
//   4. a single numeral word ("three", and "三" for Chinese responses).
// Integers outside 1..5 are never candidates and are never clamped.
// Scale echoes like "1 to 5" or "4/5" are removed before rules 3 and 4.
ParseResult parse_likert(std::string_view text, Language language);

// "Your score: N" or "您的分数是：N".
std::string canonical_response(int score, Language language);

}  // namespace vsmalign

#endif  // VSMALIGN_PARSER_H_
