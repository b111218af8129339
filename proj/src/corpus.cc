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

#include "vsmalign/corpus.h"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "json.hpp"
#include "embedded_data.h"
#include "vsmalign/errors.h"

namespace vsmalign {
namespace {

using nlohmann::json;

constexpr std::string_view kEnglishNonePrompt =
    "You are an average person answering a survey question.";

std::string required_string(const json& obj, const char* field,
                            const std::string& where) {
  auto it = obj.find(field);
  if (it == obj.end() || !it->is_string()) {
    throw ValidationError(where + ": missing string field '" + field + "'");
  }
  return it->get<std::string>();
}

bool contains_ci(std::string_view haystack, std::string_view needle) {
  auto it = std::search(haystack.begin(), haystack.end(), needle.begin(),
                        needle.end(), [](char a, char b) {
                          return std::tolower(static_cast<unsigned char>(a)) ==
                                 std::tolower(static_cast<unsigned char>(b));
                        });
  return it != haystack.end();
}

// Every prompt must ask for a 1-5 score and forbid reasoning.
bool has_score_instruction(std::string_view text, Language language) {
  bool range = text.find('1') != std::string_view::npos &&
               text.find('5') != std::string_view::npos;
  bool no_reasoning =
      language == Language::kEnglish
          ? contains_ci(text, "reason")
          : (text.find("请勿") != std::string_view::npos ||
             text.find("不要") != std::string_view::npos);
  return range && no_reasoning;
}

}  // namespace

std::string_view to_string(Language language) {
  return language == Language::kEnglish ? "English" : "SimplifiedChinese";
}

std::string_view to_string(Culture culture) {
  switch (culture) {
    case Culture::kNone:
      return "None";
    case Culture::kUS:
      return "US";
    case Culture::kChina:
      return "China";
  }
  return "None";
}

std::optional<Language> parse_language(std::string_view name) {
  if (name == "English") return Language::kEnglish;
  if (name == "SimplifiedChinese") return Language::kSimplifiedChinese;
  return std::nullopt;
}

std::optional<Culture> parse_culture(std::string_view name) {
  if (name == "None") return Culture::kNone;
  if (name == "US") return Culture::kUS;
  if (name == "China") return Culture::kChina;
  return std::nullopt;
}

std::string_view language_code(Language language) {
  return language == Language::kEnglish ? "en" : "sc";
}

std::string_view culture_code(Culture culture) {
  switch (culture) {
    case Culture::kNone:
      return "";
    case Culture::kUS:
      return "US";
    case Culture::kChina:
      return "CH";
  }
  return "";
}

std::optional<Language> language_from_code(std::string_view code) {
  if (code == "en") return Language::kEnglish;
  if (code == "sc") return Language::kSimplifiedChinese;
  return std::nullopt;
}

std::optional<Culture> culture_from_code(std::string_view code) {
  if (code.empty()) return Culture::kNone;
  if (code == "US") return Culture::kUS;
  if (code == "CH") return Culture::kChina;
  return std::nullopt;
}

QuestionId::QuestionId(int number) : number_(number) {
  if (number < 1 || number > kQuestionCount) {
    throw std::out_of_range("question number out of range: " +
                            std::to_string(number));
  }
}

std::optional<QuestionId> QuestionId::parse(std::string_view text) {
  if (text.size() != 3 || text[0] != 'm' || !std::isdigit(text[1]) ||
      !std::isdigit(text[2])) {
    return std::nullopt;
  }
  int number = (text[1] - '0') * 10 + (text[2] - '0');
  if (number < 1 || number > kQuestionCount) return std::nullopt;
  return QuestionId(number);
}

std::string QuestionId::str() const {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "m%02d", number_);
  return buf;
}

const std::array<QuestionId, kQuestionCount>& all_questions() {
  static const auto ids = []<std::size_t... I>(std::index_sequence<I...>) {
    return std::array<QuestionId, kQuestionCount>{
        QuestionId(static_cast<int>(I) + 1)...};
  }(std::make_index_sequence<kQuestionCount>{});
  return ids;
}

SurveyInstrument::SurveyInstrument(std::string version,
                                   std::vector<QuestionSpec> questions,
                                   std::vector<SystemPromptSpec> system_prompts)
    : version_(std::move(version)),
      questions_(std::move(questions)),
      system_prompts_(std::move(system_prompts)) {
  if (version_.empty()) throw ValidationError("instrument version is empty");
  if (questions_.size() != kQuestionCount) {
    throw ValidationError("instrument must hold exactly 24 questions, got " +
                          std::to_string(questions_.size()));
  }
  for (int i = 0; i < kQuestionCount; ++i) {
    if (questions_[i].id.index() != i) {
      throw ValidationError("question order violated at position " +
                            std::to_string(i + 1) + ": found " +
                            questions_[i].id.str());
    }
  }
  if (system_prompts_.size() != 6) {
    throw ValidationError("instrument must hold exactly 6 system prompts, got " +
                          std::to_string(system_prompts_.size()));
  }
  for (Language l : kAllLanguages) {
    for (Culture c : kAllCultures) {
      auto n = std::count_if(
          system_prompts_.begin(), system_prompts_.end(),
          [&](const SystemPromptSpec& s) {
            return s.language == l && s.culture == c;
          });
      if (n != 1) {
        throw ValidationError(std::string(n == 0 ? "missing" : "duplicate") +
                              " system prompt: " + std::string(to_string(l)) +
                              "/" + std::string(to_string(c)));
      }
    }
  }
  if (system_prompt(Language::kEnglish, Culture::kNone) != kEnglishNonePrompt) {
    throw ValidationError(
        "English/None system prompt must read \"" +
        std::string(kEnglishNonePrompt) + "\"");
  }
}

const std::string& SurveyInstrument::system_prompt(Language language,
                                                   Culture culture) const {
  for (const auto& s : system_prompts_) {
    if (s.language == language && s.culture == culture) return s.text;
  }
  // Unreachable for a constructed instrument.
  throw std::logic_error("system prompt lookup failed");
}

SurveyInstrument parse_instrument(std::string_view document) {
  // Track question keys while parsing; a JSON object silently keeps only the
  // last duplicate.
  std::string top_key;
  std::optional<std::string> duplicate;
  std::set<std::string> seen;
  json::parser_callback_t cb = [&](int depth, json::parse_event_t event,
                                   json& parsed) {
    if (event == json::parse_event_t::key) {
      if (depth == 1) {
        top_key = parsed.get<std::string>();
      } else if (depth == 2 && top_key == "questions") {
        auto key = parsed.get<std::string>();
        if (!seen.insert(key).second && !duplicate) duplicate = key;
      }
    }
    return true;
  };

  json doc;
  try {
    doc = json::parse(document.begin(), document.end(), cb);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("instrument is not valid JSON: ") +
                          e.what());
  }
  if (!doc.is_object()) throw ValidationError("instrument must be an object");
  if (duplicate) throw ValidationError("duplicate question: " + *duplicate);

  std::string version = required_string(doc, "version", "instrument");

  auto qs = doc.find("questions");
  if (qs == doc.end() || !qs->is_object()) {
    throw ValidationError("instrument: missing 'questions' object");
  }
  std::map<int, QuestionSpec> by_number;
  for (auto& [key, value] : qs->items()) {
    auto id = QuestionId::parse(key);
    if (!id) throw ValidationError("unknown question id: " + key);
    if (!value.is_object()) throw ValidationError(key + ": must be an object");
    QuestionSpec q;
    q.id = *id;
    q.text_en = required_string(value, "text_en", key);
    q.text_zh = required_string(value, "text_zh", key);
    q.scale_low_label = required_string(value, "scale_low_label", key);
    q.scale_high_label = required_string(value, "scale_high_label", key);
    q.polarity_note = value.value("polarity_note", std::string());
    by_number.emplace(id->number(), std::move(q));
  }

  std::string missing;
  for (QuestionId id : all_questions()) {
    if (!by_number.count(id.number())) {
      missing += (missing.empty() ? "" : ", ") + id.str();
    }
  }
  if (!missing.empty()) throw ValidationError("missing question: " + missing);

  std::vector<QuestionSpec> questions;
  for (auto& [n, q] : by_number) {
    if (q.text_en.empty()) throw ValidationError(q.id.str() + ": empty text_en");
    if (q.text_zh.empty()) throw ValidationError(q.id.str() + ": empty text_zh");
    if (!has_score_instruction(q.text_en, Language::kEnglish)) {
      throw ValidationError(q.id.str() +
                            ": text_en lacks the 1-5 score-only instruction");
    }
    if (!has_score_instruction(q.text_zh, Language::kSimplifiedChinese)) {
      throw ValidationError(q.id.str() +
                            ": text_zh lacks the 1-5 score-only instruction");
    }
    questions.push_back(std::move(q));
  }

  auto sp = doc.find("system_prompts");
  if (sp == doc.end() || !sp->is_array()) {
    throw ValidationError("instrument: missing 'system_prompts' array");
  }
  std::vector<SystemPromptSpec> prompts;
  for (const auto& entry : *sp) {
    SystemPromptSpec s;
    auto lang = parse_language(required_string(entry, "language", "system prompt"));
    auto cult = parse_culture(required_string(entry, "culture", "system prompt"));
    if (!lang || !cult) {
      throw ValidationError("system prompt: unknown language or culture in " +
                            entry.dump());
    }
    s.language = *lang;
    s.culture = *cult;
    s.text = required_string(entry, "text", "system prompt");
    if (s.text.empty()) throw ValidationError("system prompt: empty text");
    prompts.push_back(std::move(s));
  }

  return SurveyInstrument(std::move(version), std::move(questions),
                          std::move(prompts));
}

const SurveyInstrument& embedded_instrument() {
  static const SurveyInstrument instrument =
      parse_instrument(internal::kEmbeddedInstrument);
  return instrument;
}

SurveyInstrument load_instrument(const std::filesystem::path& source) {
  if (source.empty()) return embedded_instrument();
  std::ifstream in(source, std::ios::binary);
  if (!in) throw ValidationError("cannot read instrument file: " + source.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instrument(buf.str());
}

MessagePair render_prompt(const SurveyInstrument& instrument,
                          const QuestionSpec& question, Language language,
                          Culture culture) {
  return MessagePair{instrument.system_prompt(language, culture),
                     question.text(language)};
}

std::string population_label(std::string_view model, Language language,
                             Culture culture) {
  std::string label(model);
  label += '_';
  label += language_code(language);
  if (culture != Culture::kNone) {
    label += '_';
    label += culture_code(culture);
  }
  return label;
}

std::optional<PopulationLabel> parse_population_label(std::string_view label) {
  PopulationLabel out;
  auto pos = label.rfind('_');
  if (pos == std::string_view::npos) return std::nullopt;
  auto last = label.substr(pos + 1);
  if (auto c = culture_from_code(last); c && *c != Culture::kNone) {
    out.culture = *c;
    label = label.substr(0, pos);
    pos = label.rfind('_');
    if (pos == std::string_view::npos) return std::nullopt;
    last = label.substr(pos + 1);
  }
  auto lang = language_from_code(last);
  if (!lang || pos == 0) return std::nullopt;
  out.language = *lang;
  out.model = std::string(label.substr(0, pos));
  return out;
}

}  // namespace vsmalign
