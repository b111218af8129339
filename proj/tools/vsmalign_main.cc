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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vsmalign/alignment.h"
#include "vsmalign/client.h"
#include "vsmalign/corpus.h"
#include "vsmalign/errors.h"
#include "vsmalign/journal.h"
#include "vsmalign/published_results.h"
#include "vsmalign/report.h"
#include "vsmalign/runner.h"
#include "vsmalign/scoring.h"

namespace {

using namespace vsmalign;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitCellsFailed = 2;
constexpr int kExitConfig = 3;

struct Common {
  std::string instrument;
  std::string references;
};

std::pair<CountryReference, CountryReference> references(const Common& common) {
  std::vector<CountryReference> refs = common.references.empty()
                                           ? embedded_references()
                                           : load_references(common.references);
  return {find_reference(refs, "US"), find_reference(refs, "China")};
}

void print_manifest(const RunManifest& m) {
  for (const auto& p : m.populations) {
    std::printf("%-24s %-9s surveys=%d/%d requests=%ld new=%ld retries=%ld%s%s\n",
                p.population_id.c_str(), std::string(to_string(p.status)).c_str(),
                p.complete_surveys, m.matrix.surveys_per_population, p.requests,
                p.new_requests, p.retries, p.error.empty() ? "" : "  error: ",
                p.error.c_str());
    for (const auto& [q, f] : p.failure_histogram) {
      if (f.failed == 0) continue;
      std::printf("    %s failed in %d of %d surveys (%.0f%%)\n", q.c_str(), f.failed,
                  f.asked, 100.0 * f.failed / std::max(1, f.asked));
    }
  }
  std::printf("manifest: %s\n", (m.matrix.output_dir / "manifest.json").c_str());
}

// Scores every population found in the journals of `dir` and writes the
// report into `out`. Returns false when some population could not be scored.
bool score_directory(const fs::path& dir, const fs::path& out, bool allow_small,
                     const Common& common) {
  if (!fs::is_directory(dir)) throw ConfigError("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".journal") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::vector<PromptRecord> all;
  std::vector<std::string> ids;
  for (const auto& f : files) {
    for (auto& r : journal_load(f)) {
      if (std::find(ids.begin(), ids.end(), r.population_id) == ids.end()) {
        ids.push_back(r.population_id);
      }
      all.push_back(std::move(r));
    }
  }
  ScoringOptions options;
  options.allow_small = allow_small;
  std::vector<ScoredPopulation> scored;
  bool ok = true;
  for (const auto& id : ids) {
    try {
      auto sample = assemble_population(all, id, options);
      scored.push_back({id, compute_dimensions(compute_means(sample, options)),
                        static_cast<int>(sample.sheets.size())});
    } catch (const MinimumPopulationError& e) {
      std::cerr << "skipping " << id << ": " << e.what() << "\n";
      ok = false;
    }
  }
  auto [us, china] = references(common);
  auto bundle = build_bundle(scored, us, china, journal_caveats(all));
  emit_all(bundle, out);
  std::printf("scored %zu population(s) from %zu journal(s); report in %s\n",
              scored.size(), files.size(), out.c_str());
  if (!bundle.improvements_error.empty()) {
    std::printf("category comparison unavailable: %s\n",
                bundle.improvements_error.c_str());
  }
  return ok;
}

int verify_paper(const Common& common) {
  auto [us, china] = references(common);
  int failures = 0;
  auto line = [&](bool ok, const std::string& what) {
    std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", what.c_str());
    failures += !ok;
  };

  std::vector<AlignmentDistance> distances;
  int row_misses = 0;
  for (const auto& r : published_population_rows()) {
    auto du = alignment_distance(r.scores, us, r.label);
    auto dc = alignment_distance(r.scores, china, r.label);
    if (std::fabs(du.total - r.us_total) > 0.01) {
      ++row_misses;
      std::printf("  %s US %.2f vs printed %.2f\n", r.label.c_str(), du.total, r.us_total);
    }
    if (std::fabs(dc.total - r.china_total) > 0.01) {
      ++row_misses;
      std::printf("  %s China %.2f vs printed %.2f\n", r.label.c_str(), dc.total,
                  r.china_total);
    }
    distances.push_back(std::move(du));
    distances.push_back(std::move(dc));
  }
  line(row_misses == 0, "population distances: " +
                            std::to_string(2 * published_population_rows().size() -
                                           row_misses) +
                            "/" + std::to_string(2 * published_population_rows().size()) +
                            " within 0.01");

  int table2_misses = 0;
  auto rows = compute_improvements(distances, published_models());
  auto printed = published_improvements();
  for (std::size_t i = 0; i < rows.size() && i < printed.size(); ++i) {
    const auto& r = rows[i];
    bool ok = std::fabs(r.baseline_total - printed[i].baseline_total) <= 0.01 &&
              std::fabs(r.variant_total - printed[i].variant_total) <= 0.01 &&
              std::fabs(r.improvement_pct - printed[i].printed_pct) <= 0.1;
    table2_misses += !ok;
    std::printf("  %-5s %-14s %8s -> %-22s %8s  %5.1f%% (printed %.1f%%)\n",
                r.country.c_str(), r.baseline_label.c_str(),
                format_number(r.baseline_total).c_str(), r.variant_label.c_str(),
                format_number(r.variant_total).c_str(),
                round_reported_percent(r.improvement_pct), printed[i].printed_pct);
  }
  line(table2_misses == 0 && rows.size() == printed.size(),
       "category totals and improvements: " + std::to_string(rows.size() - table2_misses) +
           "/" + std::to_string(printed.size()));

  try {
    auto [du, dc] = derive_references(published_population_rows());
    bool match = du.values == us.values && dc.values == china.values;
    std::string vec;
    for (double v : du.values.values) vec += (vec.empty() ? "" : ",") + format_number(v);
    std::string vec2;
    for (double v : dc.values.values) vec2 += (vec2.empty() ? "" : ",") + format_number(v);
    line(match, "reference derivation: US=(" + vec + ") China=(" + vec2 + ")" +
                    (match ? " matches the reference data" : " differs from the reference data"));
  } catch (const ReferenceDerivationError& e) {
    line(false, std::string("reference derivation: ") + e.what());
  }
  return failures == 0 ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cultural alignment measurement with the VSM13 survey"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--instrument", common.instrument,
                 "Instrument file overriding the embedded survey");
  app.add_option("--references", common.references,
                 "Country reference file overriding the embedded values");

  auto* run = app.add_subcommand("run", "Administer the survey over a run matrix");
  std::string config, mock_spec;
  run->add_option("--config", config, "Run-matrix JSON file")->required();
  run->add_option("--mock", mock_spec, "Answer with a mock respondent spec instead");

  auto* score = app.add_subcommand("score", "Score journals into a report");
  std::string journal_dir, score_out;
  bool allow_small = false;
  score->add_option("--journal-dir", journal_dir, "Directory of *.journal files")
      ->required();
  score->add_option("--out", score_out, "Report directory (default <journal-dir>/report)");
  score->add_flag("--allow-small", allow_small,
                  "Score populations below 20 surveys (flagged as non-conformant)");

  auto* report = app.add_subcommand("report", "Rebuild reports from a scores CSV");
  std::string scores_path, report_out = "report";
  report->add_option("--scores", scores_path, "scores.csv to read")->required();
  report->add_option("--out", report_out, "Report directory");

  auto* verify = app.add_subcommand(
      "verify-paper", "Check the embedded published tables and reference derivation");

  auto* mock_run = app.add_subcommand("mock-run", "Offline pipeline with a mock respondent");
  std::string spec_path, mock_out = "mock-run";
  mock_run->add_option("--spec", spec_path, "Mock respondent spec")->required();
  mock_run->add_option("--out", mock_out, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    const SurveyInstrument instrument =
        common.instrument.empty() ? embedded_instrument() : load_instrument(common.instrument);

    if (*run) {
      RunMatrix matrix;
      std::optional<MockRespondentSpec> spec;
      try {
        matrix = load_run_matrix(config);
        if (!mock_spec.empty()) spec = load_mock_spec(mock_spec);
      } catch (const ValidationError& e) {
        throw ConfigError(e.what());
      }
      auto manifest = run_matrix(
          matrix,
          [&](const EndpointConfig& e) -> std::shared_ptr<Completer> {
            if (spec) return std::make_shared<MockCompleter>(*spec, e.model_id);
            return std::make_shared<HttpCompleter>(e);
          },
          instrument);
      print_manifest(manifest);
      return manifest.all_complete() ? kExitOk : kExitCellsFailed;
    }
    if (*score) {
      fs::path out = score_out.empty() ? fs::path(journal_dir) / "report" : fs::path(score_out);
      return score_directory(journal_dir, out, allow_small, common) ? kExitOk
                                                                     : kExitCellsFailed;
    }
    if (*report) {
      auto scored = read_scores_csv(scores_path);
      auto [us, china] = references(common);
      auto bundle = build_bundle(scored, us, china, journal_caveats({}));
      emit_all(bundle, report_out);
      std::printf("wrote report for %zu population(s) to %s\n", scored.size(),
                  report_out.c_str());
      if (!bundle.improvements_error.empty()) {
        std::printf("category comparison unavailable: %s\n",
                    bundle.improvements_error.c_str());
      }
      return kExitOk;
    }
    if (*verify) return verify_paper(common);
    if (*mock_run) {
      MockRespondentSpec spec;
      try {
        spec = load_mock_spec(spec_path);
      } catch (const ValidationError& e) {
        throw ConfigError(e.what());
      }
      RunMatrix matrix;
      EndpointConfig e;
      e.label = "mock";
      e.model_id = "mock-respondent";
      matrix.models = {e};
      matrix.output_dir = fs::path(mock_out) / "journals";
      matrix.parallel_cells = 6;
      auto manifest = run_matrix(
          matrix, [&](const EndpointConfig&) { return std::make_shared<MockCompleter>(spec); },
          instrument);
      print_manifest(manifest);
      bool scored = score_directory(matrix.output_dir, fs::path(mock_out) / "report", false,
                                    common);
      return manifest.all_complete() && scored ? kExitOk : kExitCellsFailed;
    }
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}
