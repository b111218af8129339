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

#include "vsmalign/scoring.h"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "vsmalign/errors.h"

namespace vsmalign {
namespace {

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (int x : v) out += (out.empty() ? "" : ", ") + std::to_string(x);
  return out;
}

}  // namespace

std::string_view to_string(Dimension d) {
  static constexpr std::array<std::string_view, 6> kNames = {
      "PDI", "IDV", "MAS", "UAI", "LTO", "IVR"};
  return kNames[static_cast<int>(d)];
}

const std::array<DimensionEquation, 6>& dimension_equations() {
  using Q = QuestionId;
  static const std::array<DimensionEquation, 6> kEquations = {{
      {Dimension::kPDI, 35, Q(7), Q(2), 25, Q(20), Q(23)},
      {Dimension::kIDV, 35, Q(4), Q(1), 35, Q(9), Q(6)},
      {Dimension::kMAS, 35, Q(5), Q(3), 35, Q(8), Q(10)},
      {Dimension::kUAI, 40, Q(18), Q(15), 25, Q(21), Q(24)},
      {Dimension::kLTO, 40, Q(13), Q(14), 25, Q(19), Q(22)},
      {Dimension::kIVR, 35, Q(12), Q(11), 40, Q(17), Q(16)},
  }};
  return kEquations;
}

AnswerSheet::AnswerSheet(int survey_index,
                         const std::array<int, kQuestionCount>& answers)
    : survey_index_(survey_index) {
  for (QuestionId q : all_questions()) set(q, answers[q.index()]);
}

void AnswerSheet::set(QuestionId q, int value) {
  if (value < 1 || value > 5) {
    throw std::out_of_range("answer for " + q.str() + " out of 1..5: " +
                            std::to_string(value));
  }
  answers_[q.index()] = value;
}

std::optional<int> AnswerSheet::answer(QuestionId q) const {
  int v = answers_[q.index()];
  return v == 0 ? std::nullopt : std::optional<int>(v);
}

bool AnswerSheet::complete() const {
  return std::none_of(answers_.begin(), answers_.end(),
                      [](int v) { return v == 0; });
}

std::vector<QuestionId> AnswerSheet::missing() const {
  std::vector<QuestionId> out;
  for (QuestionId q : all_questions()) {
    if (answers_[q.index()] == 0) out.push_back(q);
  }
  return out;
}

QuestionMeans compute_means(const PopulationSample& population,
                            const ScoringOptions& options) {
  const int n = static_cast<int>(population.sheets.size());
  if (n == 0 || (n < options.minimum_population && !options.allow_small)) {
    throw MinimumPopulationError(
        "population " + population.population_id + " has " +
            std::to_string(n) + " complete sheets; at least " +
            std::to_string(options.minimum_population) + " required",
        n, population.excluded_surveys);
  }
  std::array<long, kQuestionCount> sums{};
  for (const auto& sheet : population.sheets) {
    if (!sheet.complete()) {
      std::string ids;
      for (QuestionId q : sheet.missing()) ids += (ids.empty() ? "" : ", ") + q.str();
      throw ValidationError("survey " + std::to_string(sheet.survey_index()) +
                            " of " + population.population_id +
                            " is incomplete; missing " + ids);
    }
    for (QuestionId q : all_questions()) sums[q.index()] += *sheet.answer(q);
  }
  QuestionMeans means;
  means.n = n;
  for (int i = 0; i < kQuestionCount; ++i) {
    means.mean[i] = static_cast<double>(sums[i]) / n;
  }
  return means;
}

DimensionScores compute_dimensions(const QuestionMeans& m,
                                   const DimensionConstants& constants) {
  DimensionScores out;
  for (const auto& eq : dimension_equations()) {
    out[eq.dimension] = eq.weight1 * (m[eq.plus1] - m[eq.minus1]) +
                        eq.weight2 * (m[eq.plus2] - m[eq.minus2]) +
                        constants[eq.dimension];
  }
  return out;
}

PopulationSample collect_population(std::span<const PromptRecord> journal,
                                    const std::string& population_id) {
  struct Best {
    int attempt = 0;
    int score = 0;
  };
  std::map<int, std::array<Best, kQuestionCount>> surveys;
  std::string model_id;
  for (const auto& r : journal) {
    if (r.population_id != population_id) continue;
    if (model_id.empty()) model_id = r.model_id;
    auto& slots = surveys[r.survey_index];
    if (!r.parsed_score) continue;
    auto q = QuestionId::parse(r.question_id);
    if (!q) {
      throw ValidationError("journal record has unknown question id: " +
                            r.question_id);
    }
    auto& best = slots[q->index()];
    if (r.attempt > best.attempt) best = {r.attempt, *r.parsed_score};
  }

  PopulationSample pop;
  pop.population_id = population_id;
  pop.model_id = model_id;
  if (auto label = parse_population_label(population_id)) {
    pop.language = label->language;
    pop.culture = label->culture;
  }
  for (const auto& [index, slots] : surveys) {
    AnswerSheet sheet(index);
    for (QuestionId q : all_questions()) {
      if (slots[q.index()].attempt > 0) sheet.set(q, slots[q.index()].score);
    }
    if (sheet.complete()) {
      pop.sheets.push_back(sheet);
    } else {
      pop.excluded_surveys.push_back(index);
    }
  }
  return pop;
}

PopulationSample assemble_population(std::span<const PromptRecord> journal,
                                     const std::string& population_id,
                                     const ScoringOptions& options) {
  PopulationSample pop = collect_population(journal, population_id);
  const int n = static_cast<int>(pop.sheets.size());
  if (n == 0 || (n < options.minimum_population && !options.allow_small)) {
    throw MinimumPopulationError(
        "population " + population_id + " has " + std::to_string(n) +
            " complete surveys; at least " +
            std::to_string(options.minimum_population) +
            " required; incomplete surveys: [" +
            join_ints(pop.excluded_surveys) + "]",
        n, pop.excluded_surveys);
  }
  return pop;
}

}  // namespace vsmalign
