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

#ifndef VSMALIGN_SCORING_H_
#define VSMALIGN_SCORING_H_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vsmalign/corpus.h"
#include "vsmalign/journal.h"

namespace vsmalign {

// Hofstede's floor for a scorable population.
inline constexpr int kMinimumPopulation = 20;

enum class Dimension { kPDI, kIDV, kMAS, kUAI, kLTO, kIVR };

inline constexpr std::array<Dimension, 6> kAllDimensions = {
    Dimension::kPDI, Dimension::kIDV, Dimension::kMAS,
    Dimension::kUAI, Dimension::kLTO, Dimension::kIVR};

std::string_view to_string(Dimension d);

// Six index values in PDI, IDV, MAS, UAI, LTO, IVR order. Values are not
// clamped; scores below 0 or above 100 are legitimate.
struct DimensionScores {
  std::array<double, 6> values{};

  double operator[](Dimension d) const { return values[static_cast<int>(d)]; }
  double& operator[](Dimension d) { return values[static_cast<int>(d)]; }

  friend bool operator==(const DimensionScores&,
                         const DimensionScores&) = default;
};

// Range-correction constants, overridable only as a full set.
struct DimensionConstants {
  DimensionScores offsets{{15.0, 11.5, 67.5, 82.5, 44.0, 45.5}};

  double operator[](Dimension d) const { return offsets[d]; }
};

// index = w1 * (m[p1] - m[n1]) + w2 * (m[p2] - m[n2]) + C
struct DimensionEquation {
  Dimension dimension;
  double weight1;
  QuestionId plus1, minus1;
  double weight2;
  QuestionId plus2, minus2;
};

const std::array<DimensionEquation, 6>& dimension_equations();

// One respondent's answers. Unanswered questions are tracked so incomplete
// sheets can be reported rather than silently averaged.
class AnswerSheet {
 public:
  explicit AnswerSheet(int survey_index) : survey_index_(survey_index) {}
  AnswerSheet(int survey_index, const std::array<int, kQuestionCount>& answers);

  int survey_index() const { return survey_index_; }

  // Throws std::out_of_range unless 1 <= value <= 5.
  void set(QuestionId q, int value);
  std::optional<int> answer(QuestionId q) const;

  bool complete() const;
  std::vector<QuestionId> missing() const;

 private:
  int survey_index_;
  std::array<int, kQuestionCount> answers_{};  // 0 = unanswered
};

struct PopulationSample {
  std::string population_id;  // `<model>_<en|sc>[_<US|CH>]`
  std::string model_id;
  Language language = Language::kEnglish;
  Culture culture = Culture::kNone;
  std::vector<AnswerSheet> sheets;
  // Survey indices seen in the source journal but left incomplete.
  std::vector<int> excluded_surveys;
};

struct ScoringOptions {
  int minimum_population = kMinimumPopulation;
  // Score populations below the floor anyway; results are non-conformant.
  bool allow_small = false;
};

struct QuestionMeans {
  std::array<double, kQuestionCount> mean{};
  int n = 0;

  double operator[](QuestionId q) const { return mean[q.index()]; }
  double& operator[](QuestionId q) { return mean[q.index()]; }
};

// Throws MinimumPopulationError below the floor (unless allow_small) and
// ValidationError for an incomplete sheet.
QuestionMeans compute_means(const PopulationSample& population,
                            const ScoringOptions& options = {});

// No rounding anywhere; reports round for display only.
DimensionScores compute_dimensions(const QuestionMeans& means,
                                   const DimensionConstants& constants = {});

// Same sheet selection as assemble_population, without the size floor.
PopulationSample collect_population(std::span<const PromptRecord> journal,
                                    const std::string& population_id);

// Builds a population from journal records: per survey and question, the
// highest attempt with a parsed score wins; only complete sheets are kept, in
// survey order. Throws MinimumPopulationError (listing incomplete surveys)
// below the floor unless allow_small.
PopulationSample assemble_population(std::span<const PromptRecord> journal,
                                     const std::string& population_id,
                                     const ScoringOptions& options = {});

}  // namespace vsmalign

#endif  // VSMALIGN_SCORING_H_
