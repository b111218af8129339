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

#include "vsmalign/alignment.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "embedded_data.h"
#include "json.hpp"

namespace vsmalign {
namespace {

using nlohmann::json;
using Vec6 = std::array<int, 6>;

constexpr double kEpsilon = 1e-9;

std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string_view prompting_label(Culture c) {
  return c == Culture::kUS ? "+ US Prompting" : "+ Chinese Prompting";
}

// Meet-in-the-middle search over dims {0,1,2} x {3,4,5}. Row totals are
// compared through a linear hash sum_i key_i * value_i, which splits into
// independent per-dimension terms; hash hits are then verified exactly.
class GridSearch {
 public:
  GridSearch(std::span<const DimensionScores> scores,
             std::span<const double> totals, const DerivationOptions& options)
      : lo_(options.grid_min), width_(options.grid_max - options.grid_min + 1) {
    const std::size_t rows = scores.size();
    cents_.resize(rows);
    targets_.resize(rows);
    for (std::size_t i = 0; i < rows; ++i) {
      for (int d = 0; d < 6; ++d) {
        cents_[i][d] = std::llround(scores[i].values[d] * 100.0);
      }
      targets_[i] = std::llround(totals[i] * 100.0);
    }
    std::mt19937_64 rng(0x5eed5eedULL);
    keys_.resize(rows);
    for (auto& k : keys_) k = rng() | 1ULL;
  }

  std::vector<Vec6> solve(const std::vector<bool>& active, std::size_t limit) {
    const std::size_t rows = cents_.size();
    // term[d][r] = sum_i key_i * |score_id - r| over active rows.
    std::array<std::vector<std::uint64_t>, 6> term;
    for (int d = 0; d < 6; ++d) {
      term[d].assign(width_, 0);
      for (int r = 0; r < width_; ++r) {
        long long ref = static_cast<long long>(lo_ + r) * 100;
        std::uint64_t h = 0;
        for (std::size_t i = 0; i < rows; ++i) {
          if (!active[i]) continue;
          h += keys_[i] * static_cast<std::uint64_t>(std::llabs(cents_[i][d] - ref));
        }
        term[d][r] = h;
      }
    }
    std::uint64_t target = 0;
    for (std::size_t i = 0; i < rows; ++i) {
      if (active[i]) target += keys_[i] * static_cast<std::uint64_t>(targets_[i]);
    }

    const std::size_t w = width_;
    std::vector<std::pair<std::uint64_t, std::uint32_t>> left;
    left.reserve(w * w * w);
    for (std::size_t a = 0; a < w; ++a) {
      for (std::size_t b = 0; b < w; ++b) {
        std::uint64_t ab = term[0][a] + term[1][b];
        for (std::size_t c = 0; c < w; ++c) {
          left.emplace_back(ab + term[2][c],
                            static_cast<std::uint32_t>((a * w + b) * w + c));
        }
      }
    }
    std::sort(left.begin(), left.end());

    std::vector<Vec6> found;
    for (std::size_t a = 0; a < w && found.size() < limit; ++a) {
      for (std::size_t b = 0; b < w && found.size() < limit; ++b) {
        std::uint64_t ab = term[3][a] + term[4][b];
        for (std::size_t c = 0; c < w && found.size() < limit; ++c) {
          std::uint64_t want = target - (ab + term[5][c]);
          auto it = std::lower_bound(
              left.begin(), left.end(),
              std::make_pair(want, std::uint32_t{0}));
          for (; it != left.end() && it->first == want; ++it) {
            std::uint32_t idx = it->second;
            Vec6 v{static_cast<int>(idx / (w * w)),
                   static_cast<int>((idx / w) % w), static_cast<int>(idx % w),
                   static_cast<int>(a), static_cast<int>(b),
                   static_cast<int>(c)};
            for (int& x : v) x += lo_;
            if (exact_fit(v, active) && found.size() < limit) found.push_back(v);
          }
        }
      }
    }
    std::sort(found.begin(), found.end());
    return found;
  }

  long long residual(const Vec6& v, std::size_t row) const {
    long long sum = 0;
    for (int d = 0; d < 6; ++d) sum += std::llabs(cents_[row][d] - v[d] * 100LL);
    return sum - targets_[row];
  }

  std::size_t rows() const { return cents_.size(); }

 private:
  bool exact_fit(const Vec6& v, const std::vector<bool>& active) const {
    for (std::size_t i = 0; i < cents_.size(); ++i) {
      if (active[i] && residual(v, i) != 0) return false;
    }
    return true;
  }

  int lo_;
  int width_;
  std::vector<std::array<long long, 6>> cents_;
  std::vector<long long> targets_;
  std::vector<std::uint64_t> keys_;
};

CountryReference solve_column(std::span<const DistanceObservation> rows,
                              bool us_column, const std::string& country,
                              const DerivationOptions& options) {
  std::vector<DimensionScores> scores;
  std::vector<double> totals;
  for (const auto& r : rows) {
    scores.push_back(r.scores);
    totals.push_back(us_column ? r.us_total : r.china_total);
  }
  GridSearch search(scores, totals, options);
  const std::size_t n = rows.size();

  auto solutions = search.solve(std::vector<bool>(n, true), 2);
  if (solutions.size() == 1) {
    CountryReference ref;
    ref.country = country;
    for (int d = 0; d < 6; ++d) ref.values.values[d] = solutions[0][d];
    ref.provenance = "derived from " + std::to_string(n) + " distance rows";
    // Confirm at the caller's tolerance, independent of the cent rounding.
    for (std::size_t i = 0; i < n; ++i) {
      double total = alignment_distance(scores[i], ref).total;
      if (std::abs(total - totals[i]) > options.tolerance + kEpsilon) {
        throw ReferenceDerivationError(
            country + ": derived vector misses row " + rows[i].label +
                " beyond tolerance",
            static_cast<int>(i));
      }
    }
    return ref;
  }
  if (solutions.size() > 1) {
    throw ReferenceDerivationError(
        country + ": underdetermined; more than one integer vector fits all " +
            std::to_string(n) + " rows",
        -1);
  }

  // No exact fit: refit on row subsets to find a vector most rows agree on,
  // then name the row that disagrees most.
  std::vector<Vec6> candidates;
  for (int parts : {2, 4}) {
    for (int p = 0; p < parts; ++p) {
      std::vector<bool> active(n, false);
      for (std::size_t i = 0; i < n; ++i) {
        active[i] = static_cast<int>(i * parts / n) == p;
      }
      if (std::count(active.begin(), active.end(), true) < 2) continue;
      auto fit = search.solve(active, 4);
      candidates.insert(candidates.end(), fit.begin(), fit.end());
    }
    if (!candidates.empty()) break;
  }
  if (candidates.empty()) {
    throw ReferenceDerivationError(
        country + ": inconsistent rows; no integer vector in [" +
            std::to_string(options.grid_min) + ", " +
            std::to_string(options.grid_max) + "]^6 fits any row subset",
        -1);
  }
  const Vec6* best = nullptr;
  std::size_t best_bad = std::numeric_limits<std::size_t>::max();
  long long best_abs = std::numeric_limits<long long>::max();
  for (const auto& c : candidates) {
    std::size_t bad = 0;
    long long abs_sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      long long r = std::llabs(search.residual(c, i));
      bad += r != 0;
      abs_sum += r;
    }
    if (bad < best_bad || (bad == best_bad && abs_sum < best_abs)) {
      best = &c;
      best_bad = bad;
      best_abs = abs_sum;
    }
  }
  std::size_t worst = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (std::llabs(search.residual(*best, i)) >
        std::llabs(search.residual(*best, worst))) {
      worst = i;
    }
  }
  double printed = us_column ? rows[worst].us_total : rows[worst].china_total;
  double fitted = printed + search.residual(*best, worst) / 100.0;
  throw ReferenceDerivationError(
      country + ": inconsistent rows; worst-offending row " +
          std::to_string(worst) + " (" + rows[worst].label + "): printed " +
          fmt2(printed) + ", best-fit vector gives " + fmt2(fitted) + "; " +
          std::to_string(best_bad) + " row(s) disagree",
      static_cast<int>(worst));
}

}  // namespace

std::string_view to_string(AlignmentClass c) {
  switch (c) {
    case AlignmentClass::kStrong: return "Strong";
    case AlignmentClass::kSoft: return "Soft";
    case AlignmentClass::kNone: return "None";
  }
  return "None";
}

AlignmentDistance alignment_distance(const DimensionScores& scores,
                                     const CountryReference& reference,
                                     std::string population_id) {
  AlignmentDistance d;
  d.population_id = std::move(population_id);
  d.country = reference.country;
  for (Dimension dim : kAllDimensions) {
    d.per_dimension[dim] = std::abs(scores[dim] - reference.values[dim]);
    d.total += d.per_dimension[dim];
  }
  d.average = d.total / 6.0;
  return d;
}

AlignmentClass classify_total(double total) {
  if (total <= kStrongTotal + kEpsilon) return AlignmentClass::kStrong;
  if (total <= kSoftTotal + kEpsilon) return AlignmentClass::kSoft;
  return AlignmentClass::kNone;
}

AlignmentClass classify(const AlignmentDistance& distance) {
  return classify_total(distance.total);
}

double improvement(double baseline_total, double variant_total) {
  if (!(baseline_total > 0.0)) {
    throw DomainError("improvement baseline must be > 0, got " +
                      fmt2(baseline_total));
  }
  return 100.0 * (baseline_total - variant_total) / baseline_total;
}

double round_reported_percent(double percent) {
  auto half_away = [](long long num, long long den) {
    long long q = (std::llabs(num) * 2 + den) / (2 * den);
    return num < 0 ? -q : q;
  };
  long long hundredths = std::llround(percent * 100.0);
  return static_cast<double>(half_away(hundredths, 10)) / 10.0;
}

std::string category_label(CategoryKey key) {
  std::string label =
      key.language == Language::kEnglish ? "English" : "Simp. Chinese";
  if (key.culture != Culture::kNone) {
    label += ' ';
    label += prompting_label(key.culture);
  }
  return label;
}

double aggregate_category(std::span<const AlignmentDistance> distances,
                          std::string_view country, CategoryKey category,
                          std::span<const std::string> models) {
  if (models.empty()) throw DomainError("empty category filter: no models given");
  std::vector<const AlignmentDistance*> in_category;
  for (const auto& d : distances) {
    if (d.country != country) continue;
    auto label = parse_population_label(d.population_id);
    if (label && label->language == category.language &&
        label->culture == category.culture) {
      in_category.push_back(&d);
    }
  }
  if (in_category.empty()) {
    throw ValidationError("missing category: " + category_label(category));
  }
  double total = 0.0;
  for (const auto& model : models) {
    std::string id = population_label(model, category.language, category.culture);
    auto n = std::count_if(in_category.begin(), in_category.end(),
                           [&](const AlignmentDistance* d) {
                             return d->population_id == id;
                           });
    if (n == 0) {
      throw ValidationError("missing model in category " +
                            category_label(category) + ": " + model);
    }
    if (n > 1) {
      throw ValidationError("duplicate population in category " +
                            category_label(category) + ": " + id);
    }
    for (const auto* d : in_category) {
      if (d->population_id == id) total += d->total;
    }
  }
  return total;
}

const std::vector<ImprovementSpec>& standard_improvements() {
  using L = Language;
  using C = Culture;
  static const std::vector<ImprovementSpec> kSpecs = {
      {"US", {L::kSimplifiedChinese, C::kNone}, {L::kEnglish, C::kNone}},
      {"US", {L::kEnglish, C::kNone}, {L::kEnglish, C::kUS}},
      {"US", {L::kSimplifiedChinese, C::kNone}, {L::kSimplifiedChinese, C::kUS}},
      {"China", {L::kEnglish, C::kNone}, {L::kSimplifiedChinese, C::kNone}},
      {"China", {L::kSimplifiedChinese, C::kNone},
       {L::kSimplifiedChinese, C::kChina}},
      {"China", {L::kEnglish, C::kNone}, {L::kEnglish, C::kChina}},
  };
  return kSpecs;
}

std::vector<ImprovementRow> compute_improvements(
    std::span<const AlignmentDistance> distances,
    std::span<const std::string> models,
    std::span<const ImprovementSpec> specs) {
  std::vector<ImprovementRow> rows;
  for (const auto& spec : specs) {
    ImprovementRow row;
    row.country = spec.country;
    row.baseline_label = category_label(spec.baseline);
    row.variant_label = spec.variant.culture == Culture::kNone
                            ? category_label(spec.variant)
                            : std::string(prompting_label(spec.variant.culture));
    row.baseline_total =
        aggregate_category(distances, spec.country, spec.baseline, models);
    row.variant_total =
        aggregate_category(distances, spec.country, spec.variant, models);
    row.improvement_pct = improvement(row.baseline_total, row.variant_total);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::array<int, 6>> consistent_reference_vectors(
    std::span<const DimensionScores> scores, std::span<const double> totals,
    const DerivationOptions& options, std::size_t limit) {
  if (scores.size() != totals.size()) {
    throw DomainError("scores and totals differ in length");
  }
  if (options.grid_max < options.grid_min) throw DomainError("empty grid");
  GridSearch search(scores, totals, options);
  return search.solve(std::vector<bool>(scores.size(), true), limit);
}

std::pair<CountryReference, CountryReference> derive_references(
    std::span<const DistanceObservation> rows, const DerivationOptions& options) {
  if (rows.size() < 2) {
    throw ReferenceDerivationError(
        "underdetermined: at least 2 rows are required, got " +
            std::to_string(rows.size()),
        -1);
  }
  if (options.grid_max < options.grid_min) throw DomainError("empty grid");
  return {solve_column(rows, true, "US", options),
          solve_column(rows, false, "China", options)};
}

std::vector<CountryReference> parse_references(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("reference file is not valid JSON: ") +
                          e.what());
  }
  auto list = doc.find("references");
  if (list == doc.end() || !list->is_array()) {
    throw ValidationError("reference file: missing 'references' array");
  }
  std::vector<CountryReference> out;
  for (const auto& entry : *list) {
    CountryReference ref;
    ref.country = entry.value("country", std::string());
    if (ref.country.empty()) throw ValidationError("reference without country");
    ref.provenance = entry.value("provenance", std::string());
    const auto values = entry.find("values");
    if (values == entry.end() || !values->is_object()) {
      throw ValidationError("reference " + ref.country + ": missing values");
    }
    for (Dimension d : kAllDimensions) {
      auto v = values->find(std::string(to_string(d)));
      if (v == values->end() || !v->is_number()) {
        throw ValidationError("reference " + ref.country + ": missing " +
                              std::string(to_string(d)));
      }
      ref.values[d] = v->get<double>();
    }
    out.push_back(std::move(ref));
  }
  return out;
}

std::vector<CountryReference> load_references(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read reference file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_references(buf.str());
}

const std::vector<CountryReference>& embedded_references() {
  static const std::vector<CountryReference> refs =
      parse_references(internal::kEmbeddedReferences);
  return refs;
}

const CountryReference& find_reference(
    std::span<const CountryReference> references, std::string_view country) {
  for (const auto& r : references) {
    if (r.country == country) return r;
  }
  throw ValidationError("no reference values for country: " +
                        std::string(country));
}

}  // namespace vsmalign
