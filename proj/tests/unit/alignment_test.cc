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

#include <chrono>
#include <random>
#include <vector>

#include "doctest.h"
#include "support/oracle.h"
#include "vsmalign/alignment.h"
#include "vsmalign/published_results.h"

namespace vsmalign {
namespace {

const CountryReference& us() { return find_reference(embedded_references(), "US"); }
const CountryReference& china() {
  return find_reference(embedded_references(), "China");
}

DimensionScores scores(std::array<double, 6> v) { return DimensionScores{v}; }

const DistanceObservation& row(std::string_view label) {
  for (const auto& r : published_population_rows()) {
    if (r.label == label) return r;
  }
  throw std::logic_error("no row " + std::string(label));
}

std::vector<AlignmentDistance> published_distances() {
  std::vector<AlignmentDistance> out;
  for (const auto& r : published_population_rows()) {
    out.push_back(alignment_distance(r.scores, us(), r.label));
    out.push_back(alignment_distance(r.scores, china(), r.label));
  }
  return out;
}

int rank(AlignmentClass c) {
  switch (c) {
    case AlignmentClass::kStrong: return 0;
    case AlignmentClass::kSoft: return 1;
    case AlignmentClass::kNone: return 2;
  }
  return 3;
}

TEST_CASE("reference vectors") {
  CHECK(us().values.values == std::array<double, 6>{40, 91, 62, 46, 26, 68});
  CHECK(china().values.values == std::array<double, 6>{80, 20, 66, 30, 87, 24});
  CHECK_FALSE(us().provenance.empty());
  CHECK_THROWS_AS(find_reference(embedded_references(), "France"), ValidationError);
}

TEST_CASE("distance examples") {
  auto gpt4o = alignment_distance(scores({36.75, 60.5, 43.0, 40.0, 43.0, 78.75}), us());
  CHECK(gpt4o.total == doctest::Approx(86.5));
  auto dsv3 = alignment_distance(scores({32.5, 95.5, 32.5, 57.5, 29.0, 80.5}), china());
  CHECK(dsv3.total == doctest::Approx(298.5));
  auto self = alignment_distance(us().values, us());
  CHECK(self.total == 0.0);
  CHECK(self.average == 0.0);
}

TEST_CASE("distance fields are consistent") {
  auto d = alignment_distance(row("GPT-5_en_CH").scores, us(), "GPT-5_en_CH");
  double sum = 0;
  for (double x : d.per_dimension.values) {
    CHECK(x >= 0);
    sum += x;
  }
  CHECK(d.total == sum);
  CHECK(d.average == d.total / 6);
  CHECK(d.population_id == "GPT-5_en_CH");
  CHECK(d.country == "US");
}

TEST_CASE("every published row reproduces both distances within 0.01") {
  REQUIRE(published_population_rows().size() == 36);
  for (const auto& r : published_population_rows()) {
    CAPTURE(r.label);
    CHECK(std::fabs(alignment_distance(r.scores, us()).total - r.us_total) <= 0.01);
    CHECK(std::fabs(alignment_distance(r.scores, china()).total - r.china_total) <= 0.01);
    CHECK(std::fabs(testing::oracle_l1(r.scores.values, us().values.values) -
                    r.us_total) <= 0.01);
  }
}

TEST_CASE("L1 metric properties on random vectors") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> v(-50, 150);
  auto random_ref = [&] {
    CountryReference r;
    r.country = "X";
    for (auto& x : r.values.values) x = v(rng);
    return r;
  };
  for (int i = 0; i < 2000; ++i) {
    auto a = random_ref(), b = random_ref(), c = random_ref();
    double ab = alignment_distance(a.values, b).total;
    double ba = alignment_distance(b.values, a).total;
    double ac = alignment_distance(a.values, c).total;
    double cb = alignment_distance(c.values, b).total;
    CHECK(alignment_distance(a.values, a).total == 0.0);
    CHECK(ab == doctest::Approx(ba));
    CHECK(ab <= ac + cb + 1e-9);
    auto dab = alignment_distance(a.values, b);
    auto dac = alignment_distance(a.values, c);
    auto dcb = alignment_distance(c.values, b);
    for (auto d : kAllDimensions) {
      CHECK(dab.per_dimension[d] <= dac.per_dimension[d] + dcb.per_dimension[d] + 1e-9);
    }
  }
}

TEST_CASE("classification examples and boundaries") {
  CHECK(classify_total(89.25) == AlignmentClass::kStrong);
  CHECK(classify_total(98.5) == AlignmentClass::kSoft);
  CHECK(classify_total(90.0) == AlignmentClass::kStrong);
  CHECK(classify_total(90.01) == AlignmentClass::kSoft);
  CHECK(classify_total(120.0) == AlignmentClass::kSoft);
  CHECK(classify_total(120.01) == AlignmentClass::kNone);
  CHECK(classify_total(0.0) == AlignmentClass::kStrong);
  CHECK(to_string(AlignmentClass::kSoft) == "Soft");
}

TEST_CASE("classification is monotone in the total") {
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> t(0, 300);
  for (int i = 0; i < 5000; ++i) {
    double a = t(rng), b = t(rng);
    if (a > b) std::swap(a, b);
    CHECK(rank(classify_total(a)) <= rank(classify_total(b)));
  }
}

TEST_CASE("improvement examples") {
  CHECK(round_reported_percent(improvement(867.75, 654.75)) == doctest::Approx(24.6));
  CHECK(round_reported_percent(improvement(654.75, 682.25)) == doctest::Approx(-4.2));
  for (double x : {0.5, 1.0, 654.75, 1e6}) CHECK(improvement(x, x) == 0.0);
  CHECK_THROWS_AS(improvement(0.0, 10.0), DomainError);
  CHECK_THROWS_AS(improvement(-1.0, 10.0), DomainError);
}

TEST_CASE("reported rounding is half away from zero on hundredths") {
  CHECK(round_reported_percent(24.546) == doctest::Approx(24.6));
  CHECK(round_reported_percent(-4.2001) == doctest::Approx(-4.2));
  CHECK(round_reported_percent(-4.25) == doctest::Approx(-4.3));
  CHECK(round_reported_percent(0.04) == doctest::Approx(0.0));
}

TEST_CASE("category aggregation") {
  auto distances = published_distances();
  const auto& models = published_models();
  CHECK(aggregate_category(distances, "US", {Language::kEnglish, Culture::kNone}, models) ==
        doctest::Approx(654.75));
  CHECK(76.75 + 76.25 + 191.75 + 155.0 + 86.5 + 68.5 == doctest::Approx(654.75));
  CHECK(aggregate_category(distances, "China", {Language::kEnglish, Culture::kChina},
                           models) == doctest::Approx(947.75));
  CHECK_THROWS_AS(aggregate_category(distances, "US", {}, std::vector<std::string>{}),
                  DomainError);

  std::vector<std::string> extra = models;
  extra.push_back("Claude");
  try {
    aggregate_category(distances, "US", {Language::kEnglish, Culture::kNone}, extra);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("Claude") != std::string::npos);
  }
}

TEST_CASE("published category totals and percentages") {
  auto distances = published_distances();
  auto rows = compute_improvements(distances, published_models());
  auto printed = published_improvements();
  REQUIRE(rows.size() == 6);
  REQUIRE(printed.size() == 6);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CAPTURE(i);
    CHECK(rows[i].country == printed[i].country);
    CHECK(rows[i].baseline_label == printed[i].baseline_label);
    CHECK(rows[i].variant_label == printed[i].variant_label);
    CHECK(std::fabs(rows[i].baseline_total - printed[i].baseline_total) <= 0.01);
    CHECK(std::fabs(rows[i].variant_total - printed[i].variant_total) <= 0.01);
    CHECK(std::fabs(rows[i].improvement_pct - printed[i].printed_pct) <= 0.1);
    CHECK(round_reported_percent(rows[i].improvement_pct) ==
          doctest::Approx(printed[i].printed_pct));
  }
}

TEST_CASE("derivation over all 36 rows recovers the shipped references") {
  auto start = std::chrono::steady_clock::now();
  auto [u, c] = derive_references(published_population_rows());
  auto elapsed = std::chrono::steady_clock::now() - start;
  MESSAGE("derivation took "
          << std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count()
          << " ms");
  CHECK(u.values == us().values);
  CHECK(c.values == china().values);
  CHECK(elapsed < std::chrono::seconds(10));
}

TEST_CASE("the consistent vector is unique on the grid") {
  std::vector<DimensionScores> s;
  std::vector<double> tu, tc;
  for (const auto& r : published_population_rows()) {
    s.push_back(r.scores);
    tu.push_back(r.us_total);
    tc.push_back(r.china_total);
  }
  auto us_all = consistent_reference_vectors(s, tu, {}, 4);
  auto ch_all = consistent_reference_vectors(s, tc, {}, 4);
  REQUIRE(us_all.size() == 1);
  REQUIRE(ch_all.size() == 1);
  CHECK(us_all[0] == std::array<int, 6>{40, 91, 62, 46, 26, 68});
  CHECK(ch_all[0] == std::array<int, 6>{80, 20, 66, 30, 87, 24});
}

TEST_CASE("a perturbed distance makes the rows inconsistent") {
  std::vector<DistanceObservation> rows(published_population_rows().begin(),
                                        published_population_rows().end());
  rows[12].us_total += 1.0;
  try {
    derive_references(rows);
    FAIL("expected ReferenceDerivationError");
  } catch (const ReferenceDerivationError& e) {
    CHECK(e.worst_row() == 12);
    CHECK(std::string(e.what()).find(rows[12].label) != std::string::npos);
  }
}

TEST_CASE("a single row is underdetermined") {
  std::vector<DistanceObservation> rows{published_population_rows()[0]};
  try {
    derive_references(rows);
    FAIL("expected ReferenceDerivationError");
  } catch (const ReferenceDerivationError& e) {
    CHECK(std::string(e.what()).find("underdetermined") != std::string::npos);
  }
}

TEST_CASE("two rows admit several vectors and are reported as underdetermined") {
  std::vector<DistanceObservation> rows{published_population_rows()[0],
                                        published_population_rows()[1]};
  try {
    derive_references(rows);
    FAIL("expected ReferenceDerivationError");
  } catch (const ReferenceDerivationError& e) {
    CHECK(std::string(e.what()).find("underdetermined") != std::string::npos);
  }
}

TEST_CASE("reference documents") {
  auto refs = parse_references(
      R"({"references":[{"country":"X","values":{"PDI":1,"IDV":2,"MAS":3,"UAI":4,"LTO":5,"IVR":6},"provenance":"p"}]})");
  REQUIRE(refs.size() == 1);
  CHECK(refs[0].values.values == std::array<double, 6>{1, 2, 3, 4, 5, 6});
  CHECK_THROWS_AS(
      parse_references(R"({"references":[{"country":"X","values":{"PDI":1}}]})"),
      ValidationError);
  CHECK_THROWS_AS(parse_references("[]"), ValidationError);
}

}  // namespace
}  // namespace vsmalign
