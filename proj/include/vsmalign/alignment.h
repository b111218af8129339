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

#ifndef VSMALIGN_ALIGNMENT_H_
#define VSMALIGN_ALIGNMENT_H_

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vsmalign/corpus.h"
#include "vsmalign/errors.h"
#include "vsmalign/scoring.h"

namespace vsmalign {

struct CountryReference {
  std::string country;
  DimensionScores values;
  std::string provenance;
};

// L1 distance between a population's scores and a country reference.
struct AlignmentDistance {
  std::string population_id;
  std::string country;
  double total = 0.0;
  DimensionScores per_dimension;
  double average = 0.0;  // total / 6
};

enum class AlignmentClass { kStrong, kSoft, kNone };

std::string_view to_string(AlignmentClass c);

// Total distance thresholds: Strong <= 90 (average 15), Soft <= 120
// (average 20). Both upper edges are inclusive.
inline constexpr double kStrongTotal = 90.0;
inline constexpr double kSoftTotal = 120.0;

AlignmentDistance alignment_distance(const DimensionScores& scores,
                                     const CountryReference& reference,
                                     std::string population_id = {});

AlignmentClass classify_total(double total);
AlignmentClass classify(const AlignmentDistance& distance);

// 100 * (baseline - variant) / baseline; positive means the distance shrank.
// Throws DomainError unless baseline > 0.
double improvement(double baseline_total, double variant_total);

// Rounds a percentage for display to one decimal the way the published
// category table does: first to hundredths, then to tenths, halves away from
// zero. 24.546 prints as 24.6.
double round_reported_percent(double percent);

// A (prompt language, cultural prompt) cell shared by every model.
struct CategoryKey {
  Language language = Language::kEnglish;
  Culture culture = Culture::kNone;

  friend bool operator==(const CategoryKey&, const CategoryKey&) = default;
};

// "English", "Simp. Chinese", "English + US Prompting", ...
std::string category_label(CategoryKey key);

// Sum of one country's totals over the given models for one category.
// Throws DomainError for an empty model list, ValidationError naming the
// category when no model has it ("missing category: Simp. Chinese") or naming
// the first model that lacks it.
double aggregate_category(std::span<const AlignmentDistance> distances,
                          std::string_view country, CategoryKey category,
                          std::span<const std::string> models);

struct ImprovementRow {
  std::string country;
  std::string baseline_label;
  double baseline_total = 0.0;
  std::string variant_label;
  double variant_total = 0.0;
  double improvement_pct = 0.0;  // unrounded
};

struct ImprovementSpec {
  std::string country;
  CategoryKey baseline;
  CategoryKey variant;
};

// The six comparisons of the category table: for the US, Simp. Chinese ->
// English, English -> +US prompting, Simp. Chinese -> +US prompting; for
// China, English -> Simp. Chinese, Simp. Chinese -> +Chinese prompting,
// English -> +Chinese prompting.
const std::vector<ImprovementSpec>& standard_improvements();

std::vector<ImprovementRow> compute_improvements(
    std::span<const AlignmentDistance> distances,
    std::span<const std::string> models,
    std::span<const ImprovementSpec> specs = standard_improvements());

// One published population row: its six scores and both distance columns.
struct DistanceObservation {
  std::string label;
  DimensionScores scores;
  double us_total = 0.0;
  double china_total = 0.0;
};

struct DerivationOptions {
  int grid_min = 0;
  int grid_max = 120;
  double tolerance = 0.01;
};

class ReferenceDerivationError : public Error {
 public:
  ReferenceDerivationError(const std::string& what, int worst_row)
      : Error(what), worst_row_(worst_row) {}
  // Index of the worst-offending input row, or -1 when none can be named.
  int worst_row() const { return worst_row_; }

 private:
  int worst_row_;
};

// Every integer vector r in [grid_min, grid_max]^6 with
// sum_d |scores[i][d] - r[d]| == totals[i] (to the cent) for all rows.
// Exhaustive; returns at most `limit` vectors.
std::vector<std::array<int, 6>> consistent_reference_vectors(
    std::span<const DimensionScores> scores, std::span<const double> totals,
    const DerivationOptions& options = {}, std::size_t limit = 16);

// Recovers the unique integer US and China vectors that reproduce both
// distance columns. Throws ReferenceDerivationError when the rows are
// underdetermined or mutually inconsistent.
std::pair<CountryReference, CountryReference> derive_references(
    std::span<const DistanceObservation> rows,
    const DerivationOptions& options = {});

// Reference data file: {"references": [{"country": "US", "values": {"PDI":
// 40, ...}, "provenance": "..."}]}.
std::vector<CountryReference> parse_references(std::string_view document);
std::vector<CountryReference> load_references(const std::filesystem::path& path);
// The reference file compiled into the library.
const std::vector<CountryReference>& embedded_references();
// Throws ValidationError when absent.
const CountryReference& find_reference(
    std::span<const CountryReference> references, std::string_view country);

}  // namespace vsmalign

#endif  // VSMALIGN_ALIGNMENT_H_
