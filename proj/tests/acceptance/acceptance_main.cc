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

// Acceptance checks. Prints one line per criterion and exits non-zero when
// any check fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support/noisy_corpus.h"
#include "support/oracle.h"
#include "vsmalign/alignment.h"
#include "vsmalign/client.h"
#include "vsmalign/journal.h"
#include "vsmalign/parser.h"
#include "vsmalign/published_results.h"
#include "vsmalign/report.h"
#include "vsmalign/runner.h"
#include "vsmalign/scoring.h"

namespace {

using namespace vsmalign;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

constexpr double kDistanceTolerance = 0.01;
constexpr double kPercentTolerance = 0.1;
constexpr double kMockTolerance = 3.0;
constexpr int kPropertyPopulations = 1000;
constexpr double kParserFloor = 0.95;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failures; the first few are kept for the report line.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) detail_ += (detail_.empty() ? "" : "; ") + what;
  }
  Outcome done(std::string summary) const {
    if (failures_ == 0) return {true, std::move(summary)};
    return {false, std::to_string(failures_) + " violation(s): " + detail_};
  }

 private:
  int failures_ = 0;
  std::string detail_;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

const CountryReference& us() { return find_reference(embedded_references(), "US"); }
const CountryReference& china() {
  return find_reference(embedded_references(), "China");
}

Outcome distance_table_golden() {
  Check c;
  const auto rows = published_population_rows();
  c.expect(rows.size() == 36, "expected 36 rows");
  for (const auto& r : rows) {
    double du = alignment_distance(r.scores, us()).total;
    double dc = alignment_distance(r.scores, china()).total;
    c.expect(std::fabs(du - r.us_total) <= kDistanceTolerance,
             r.label + " US " + fmt(du) + " vs " + fmt(r.us_total));
    c.expect(std::fabs(dc - r.china_total) <= kDistanceTolerance,
             r.label + " China " + fmt(dc) + " vs " + fmt(r.china_total));
  }
  return c.done("72 distances within 0.01");
}

Outcome reference_derivation() {
  Check c;
  std::vector<DimensionScores> scores;
  std::vector<double> tu, tc;
  for (const auto& r : published_population_rows()) {
    scores.push_back(r.scores);
    tu.push_back(r.us_total);
    tc.push_back(r.china_total);
  }
  auto us_all = consistent_reference_vectors(scores, tu, {}, 4);
  auto ch_all = consistent_reference_vectors(scores, tc, {}, 4);
  c.expect(us_all.size() == 1, std::to_string(us_all.size()) + " US solutions");
  c.expect(ch_all.size() == 1, std::to_string(ch_all.size()) + " China solutions");
  if (us_all.size() == 1 && ch_all.size() == 1) {
    CountryReference u{"US", {}, ""}, h{"China", {}, ""};
    for (int i = 0; i < 6; ++i) {
      u.values.values[i] = us_all[0][i];
      h.values.values[i] = ch_all[0][i];
    }
    c.expect(u.values == us().values, "derived US differs from shipped data");
    c.expect(h.values == china().values, "derived China differs from shipped data");
    for (const auto& r : published_population_rows()) {
      c.expect(std::fabs(alignment_distance(r.scores, u).total - r.us_total) <=
                   kDistanceTolerance,
               r.label + " US");
      c.expect(std::fabs(alignment_distance(r.scores, h).total - r.china_total) <=
                   kDistanceTolerance,
               r.label + " China");
    }
  }
  return c.done("unique pair US=(40,91,62,46,26,68) China=(80,20,66,30,87,24)");
}

Outcome category_table_golden() {
  Check c;
  std::vector<AlignmentDistance> distances;
  for (const auto& r : published_population_rows()) {
    distances.push_back(alignment_distance(r.scores, us(), r.label));
    distances.push_back(alignment_distance(r.scores, china(), r.label));
  }
  auto rows = compute_improvements(distances, published_models());
  auto printed = published_improvements();
  c.expect(rows.size() == 6 && printed.size() == 6, "expected six rows");
  for (std::size_t i = 0; i < std::min(rows.size(), printed.size()); ++i) {
    const auto& r = rows[i];
    const auto& p = printed[i];
    c.expect(std::fabs(r.baseline_total - p.baseline_total) <= kDistanceTolerance,
             r.baseline_label + " " + fmt(r.baseline_total));
    c.expect(std::fabs(r.variant_total - p.variant_total) <= kDistanceTolerance,
             r.variant_label + " " + fmt(r.variant_total));
    c.expect(std::fabs(r.improvement_pct - p.printed_pct) <= kPercentTolerance,
             "improvement " + fmt(r.improvement_pct) + " vs " + fmt(p.printed_pct));
  }
  return c.done("8 category totals and 6 percentages reproduced");
}

Outcome classification() {
  Check c;
  int us_strong_en = 0, us_soft = 0, china_strong = 0, china_soft = 0;
  bool gpt41_sc_strong = false;
  std::vector<std::string> china_soft_ids;
  for (const auto& r : published_population_rows()) {
    auto cu = classify_total(alignment_distance(r.scores, us()).total);
    auto cc = classify_total(alignment_distance(r.scores, china()).total);
    auto label = parse_population_label(r.label);
    bool english_plain = label && label->language == Language::kEnglish &&
                         label->culture == Culture::kNone;
    if (cu == AlignmentClass::kStrong && english_plain) ++us_strong_en;
    if (cu == AlignmentClass::kSoft) ++us_soft;
    if (cc == AlignmentClass::kStrong) {
      ++china_strong;
      if (r.label == "GPT-4.1_sc") gpt41_sc_strong = true;
    }
    if (cc == AlignmentClass::kSoft) {
      ++china_soft;
      china_soft_ids.push_back(r.label);
    }
  }
  for (double t : {68.5, 76.25, 76.75, 86.5}) {
    c.expect(classify_total(t) == AlignmentClass::kStrong, fmt(t) + " not Strong");
  }
  c.expect(us_strong_en == 4, std::to_string(us_strong_en) + " strong-US English");
  c.expect(us_soft == 9, std::to_string(us_soft) + " soft-US populations");
  c.expect(gpt41_sc_strong, "GPT-4.1_sc not Strong vs China");
  c.expect(china_soft == 2, std::to_string(china_soft) + " soft-China populations");
  std::sort(china_soft_ids.begin(), china_soft_ids.end());
  c.expect(china_soft_ids == std::vector<std::string>{"GPT-4.1_sc_CH", "GPT-4o_en_CH"},
           "unexpected soft-China set");
  return c.done("4 strong-US English, 9 soft-US, GPT-4.1_sc strong-China, 2 soft-China");
}

Outcome scoring_properties() {
  Check c;
  QuestionMeans flat;
  flat.mean.fill(3.0);
  c.expect(compute_dimensions(flat).values ==
               std::array<double, 6>{15, 11.5, 67.5, 82.5, 44, 45.5},
           "constants-only case");

  std::mt19937 rng(20250101);
  std::uniform_int_distribution<int> likert(1, 5);
  std::uniform_real_distribution<double> shift(-1.5, 1.5);
  for (int trial = 0; trial < kPropertyPopulations; ++trial) {
    PopulationSample pop;
    pop.population_id = "prop_en";
    for (int s = 0; s < 20; ++s) {
      std::array<int, 24> a;
      for (auto& v : a) v = likert(rng);
      pop.sheets.emplace_back(s, a);
    }
    auto means = compute_means(pop);
    auto dims = compute_dimensions(means);
    auto oracle = testing::oracle_dimensions(means.mean);
    for (int i = 0; i < 6; ++i) {
      c.expect(std::fabs(dims.values[i] - oracle[i]) < 1e-9, "oracle mismatch");
      c.expect(std::fabs(dims.values[i] * 4 - std::round(dims.values[i] * 4)) < 1e-9,
               "not a quarter point: " + fmt(dims.values[i]));
    }
    auto shuffled = pop;
    std::shuffle(shuffled.sheets.begin(), shuffled.sheets.end(), rng);
    c.expect(compute_dimensions(compute_means(shuffled)) == dims, "permutation");
    for (const auto& eq : dimension_equations()) {
      double d = shift(rng);
      auto m = means;
      m[eq.plus1] += d;
      m[eq.minus1] += d;
      m[eq.plus2] -= d;
      m[eq.minus2] -= d;
      auto moved = compute_dimensions(m);
      for (Dimension k : kAllDimensions) {
        c.expect(std::fabs(moved[k] - dims[k]) < 1e-9, "translation");
      }
    }
  }
  return c.done(std::to_string(kPropertyPopulations) +
                " random populations, zero violations");
}

MockRespondentSpec low_variance_spec() {
  MockRespondentSpec spec;
  spec.seed = 7;
  for (QuestionId q : all_questions()) {
    int mode = 1 + (q.number() * 3) % 5;
    int neighbour = mode == 5 ? 4 : mode + 1;
    std::array<double, 5> w{};
    w[mode - 1] = 0.998;
    w[neighbour - 1] = 0.002;
    spec.distributions[q] = w;
  }
  return spec;
}

Outcome offline_end_to_end() {
  Check c;
  auto dir = fs::temp_directory_path() / "vsmalign_acceptance_e2e";
  fs::remove_all(dir);
  RunMatrix m;
  EndpointConfig e;
  e.label = "mock";
  e.model_id = "mock-respondent";
  m.models = {e};
  m.output_dir = dir / "run";
  m.parallel_cells = 2;
  auto spec = low_variance_spec();
  auto manifest = run_matrix(m, [&](const EndpointConfig&) {
    return std::make_shared<MockCompleter>(spec);
  });

  QuestionMeans expected_means;
  for (QuestionId q : all_questions()) expected_means[q] = spec.expected_answer(q);
  auto expected = compute_dimensions(expected_means);

  long records = 0;
  int complete = 0;
  std::vector<ScoredPopulation> scored;
  double worst = 0.0;
  for (const auto& p : manifest.populations) {
    auto journal = journal_load(p.journal);
    records += static_cast<long>(journal.size());
    if (p.status != PopulationStatus::kComplete) continue;
    ++complete;
    auto sample = assemble_population(journal, p.population_id);
    auto dims = compute_dimensions(compute_means(sample));
    for (Dimension d : kAllDimensions) {
      worst = std::max(worst, std::fabs(dims[d] - expected[d]));
    }
    scored.push_back({p.population_id, dims, static_cast<int>(sample.sheets.size())});
  }
  c.expect(records == 2880, std::to_string(records) + " journal records");
  c.expect(complete == 6, std::to_string(complete) + " complete populations");
  c.expect(worst <= kMockTolerance, "max deviation " + fmt(worst));

  auto bundle = build_bundle(scored, us(), china());
  auto out = dir / "report";
  emit_all(bundle, out);
  c.expect(fs::exists(out / "scores.csv"), "scores.csv missing");
  c.expect(fs::exists(out / "improvements.csv"), "improvements.csv missing: " +
                                                     bundle.improvements_error);
  c.expect(fs::exists(out / "report.md"), "report.md missing");
  int plots = 0;
  if (fs::exists(out / "plots")) {
    for (const auto& f : fs::directory_iterator(out / "plots")) {
      plots += f.path().extension() == ".svg";
    }
  }
  c.expect(plots == 6, std::to_string(plots) + " plots");
  fs::remove_all(dir);
  return c.done("2880 records, 6 complete populations, max deviation " + fmt(worst) +
                " index points");
}

Outcome parser_corpus() {
  Check c;
  auto corpus = testing::noisy_corpus(500);
  int exact = 0;
  for (const auto& item : corpus) {
    auto r = parse_likert(item.text, item.language);
    if (!r) continue;
    c.expect(r.value() >= 1 && r.value() <= 5, "out-of-range value");
    exact += r.value() == item.truth;
  }
  double rate = exact / 500.0;
  c.expect(rate >= kParserFloor, "exact rate " + fmt(100 * rate) + "%");
  for (Language lang : kAllLanguages) {
    for (int n = 1; n <= 5; ++n) {
      auto r = parse_likert(canonical_response(n, lang), lang);
      c.expect(r.ok() && r.value() == n, "canonical " + canonical_response(n, lang));
    }
  }
  std::mt19937 rng(99);
  const std::string alphabet[] = {"0", "1", "3", "5", "6", "9", "10", " ", ":",
                                  "score", "分数", "three", "五", "-", "/", "."};
  std::uniform_int_distribution<std::size_t> pick(0, std::size(alphabet) - 1);
  for (int i = 0; i < 20000; ++i) {
    std::string text;
    for (int k = 0; k < 1 + i % 10; ++k) text += alphabet[pick(rng)];
    for (Language lang : kAllLanguages) {
      auto r = parse_likert(text, lang);
      c.expect(!r || (r.value() >= 1 && r.value() <= 5), "out-of-range on fuzz");
    }
  }
  return c.done(std::to_string(exact) + "/500 exact (" + fmt(100 * rate) +
                "%), canonical forms 10/10, no out-of-range values");
}

struct Criterion {
  int id;
  const char* name;
  std::chrono::milliseconds limit;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  using std::chrono::milliseconds;
  const std::vector<Criterion> criteria = {
      {1, "Published distance table reproduction", milliseconds(1000), distance_table_golden},
      {2, "Reference-vector derivation", milliseconds(10000), reference_derivation},
      {3, "Published category table reproduction", milliseconds(1000), category_table_golden},
      {4, "Classification concordance", milliseconds(1000), classification},
      {5, "Scoring property suite", milliseconds(30000), scoring_properties},
      {6, "Offline end-to-end", milliseconds(120000), offline_end_to_end},
      {7, "Parser corpus", milliseconds(60000), parser_corpus},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    auto ms = std::chrono::duration_cast<milliseconds>(Clock::now() - start);
    bool in_time = ms <= c.limit;
    bool pass = o.pass && in_time;
    failed += !pass;
    std::printf("[%s] %d. %s: %s (%lld ms, limit %lld ms)%s\n", pass ? "PASS" : "FAIL",
                c.id, c.name, o.detail.c_str(), static_cast<long long>(ms.count()),
                static_cast<long long>(c.limit.count()), in_time ? "" : " TOO SLOW");
  }
  std::printf(
      "[N/A ] 8. Live-model results: not reproducible offline; requires paid API "
      "access and is stochastic at temperature 2\n");
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
