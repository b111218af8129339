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

#ifndef VSMALIGN_CORPUS_H_
#define VSMALIGN_CORPUS_H_

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vsmalign {

inline constexpr int kQuestionCount = 24;

enum class Language { kEnglish, kSimplifiedChinese };
enum class Culture { kNone, kUS, kChina };

inline constexpr std::array<Language, 2> kAllLanguages = {
    Language::kEnglish, Language::kSimplifiedChinese};
inline constexpr std::array<Culture, 3> kAllCultures = {
    Culture::kNone, Culture::kUS, Culture::kChina};

// Instrument-file spellings: "English", "SimplifiedChinese", "None", "US",
// "China".
std::string_view to_string(Language language);
std::string_view to_string(Culture culture);
std::optional<Language> parse_language(std::string_view name);
std::optional<Culture> parse_culture(std::string_view name);

// Population label fragments: "en"/"sc" and ""/"US"/"CH".
std::string_view language_code(Language language);
std::string_view culture_code(Culture culture);
std::optional<Language> language_from_code(std::string_view code);
std::optional<Culture> culture_from_code(std::string_view code);

// VSM13 item number 1..24, printed as m01..m24.
class QuestionId {
 public:
  // Throws std::out_of_range when number is not in 1..24.
  explicit QuestionId(int number);

  static std::optional<QuestionId> parse(std::string_view text);

  int number() const { return number_; }
  // Zero-based position in instrument order.
  int index() const { return number_ - 1; }
  std::string str() const;

  friend bool operator==(QuestionId, QuestionId) = default;
  friend auto operator<=>(QuestionId, QuestionId) = default;

 private:
  int number_;
};

// All 24 ids in ascending order.
const std::array<QuestionId, kQuestionCount>& all_questions();

struct QuestionSpec {
  QuestionId id{1};
  std::string text_en;
  std::string text_zh;
  std::string scale_low_label;
  std::string scale_high_label;
  std::string polarity_note;

  const std::string& text(Language language) const {
    return language == Language::kEnglish ? text_en : text_zh;
  }
};

struct SystemPromptSpec {
  Culture culture = Culture::kNone;
  Language language = Language::kEnglish;
  std::string text;
};

struct MessagePair {
  std::string system;
  std::string user;

  friend bool operator==(const MessagePair&, const MessagePair&) = default;
};

// Immutable after load; safe to share across threads.
class SurveyInstrument {
 public:
  SurveyInstrument(std::string version, std::vector<QuestionSpec> questions,
                   std::vector<SystemPromptSpec> system_prompts);

  const std::string& version() const { return version_; }
  const std::vector<QuestionSpec>& questions() const { return questions_; }
  const std::vector<SystemPromptSpec>& system_prompts() const {
    return system_prompts_;
  }

  const QuestionSpec& question(QuestionId id) const {
    return questions_[id.index()];
  }
  const std::string& system_prompt(Language language, Culture culture) const;

 private:
  std::string version_;
  std::vector<QuestionSpec> questions_;
  std::vector<SystemPromptSpec> system_prompts_;
};

// The instrument compiled into the library.
const SurveyInstrument& embedded_instrument();

// Parses an instrument document (UTF-8 JSON). Throws ValidationError naming
// the first violated invariant, e.g. "missing question: m13" or
// "duplicate question: m05".
SurveyInstrument parse_instrument(std::string_view document);

// Reads and validates an instrument file; an empty path selects the embedded
// instrument.
SurveyInstrument load_instrument(const std::filesystem::path& source = {});

// One stateless exchange: the culture's system prompt plus the question text,
// both taken verbatim from the instrument.
MessagePair render_prompt(const SurveyInstrument& instrument,
                          const QuestionSpec& question, Language language,
                          Culture culture);

// `<model>_<en|sc>[_<US|CH>]`.
std::string population_label(std::string_view model, Language language,
                             Culture culture);

struct PopulationLabel {
  std::string model;
  Language language = Language::kEnglish;
  Culture culture = Culture::kNone;
};

// Inverse of population_label; splits from the right so model names may
// themselves contain underscores.
std::optional<PopulationLabel> parse_population_label(std::string_view label);

}  // namespace vsmalign

#endif  // VSMALIGN_CORPUS_H_
