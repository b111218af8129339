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

#ifndef VSMALIGN_REPORT_H_
#define VSMALIGN_REPORT_H_

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "vsmalign/alignment.h"
#include "vsmalign/journal.h"
#include "vsmalign/scoring.h"

namespace vsmalign {

// A scored population ready for reporting. `sample_size` of 0 means unknown
// (e.g. read back from a CSV).
struct ScoredPopulation {
  std::string population_id;
  DimensionScores scores;
  int sample_size = 0;
};

struct ScoreRow {
  std::string population_id;
  double us_total = 0.0;
  double china_total = 0.0;
  DimensionScores scores;
};

struct ClassificationEntry {
  std::string population_id;
  std::string country;
  AlignmentClass alignment = AlignmentClass::kNone;
  double average = 0.0;
};

struct ReportBundle {
  CountryReference us;
  CountryReference china;
  std::vector<ScoreRow> scores_table;
  std::vector<ImprovementRow> improvements_table;
  // Why improvements_table is empty, when it is.
  std::string improvements_error;
  std::vector<ClassificationEntry> classifications;
  std::vector<std::string> caveats;
};

// Computes distances, classifications and (when every category is present)
// the improvement rows. Throws ValidationError on a repeated population id.
ReportBundle build_bundle(std::span<const ScoredPopulation> populations,
                          const CountryReference& us,
                          const CountryReference& china,
                          std::vector<std::string> caveats = {});

// Two decimals, never "-0.00".
// Methodology flags derived from journal contents: clamped temperatures and
// re-asked questions. Always includes the two-country comparison note.
std::vector<std::string> journal_caveats(std::span<const PromptRecord> records);

std::string format_number(double value);

// `population,us_distance,china_distance,pdi,idv,mas,uai,lto,ivr`.
std::string scores_csv(const ReportBundle& bundle);
void emit_scores_csv(const ReportBundle& bundle,
                     const std::filesystem::path& path);
// Reads a scores CSV back into populations (distances are recomputed).
std::vector<ScoredPopulation> read_scores_csv(const std::filesystem::path& path);

// Throws ValidationError naming the missing category when the bundle has no
// improvement rows.
std::string improvements_csv(const ReportBundle& bundle);
void emit_improvements(const ReportBundle& bundle,
                       const std::filesystem::path& path);

std::string report_markdown(const ReportBundle& bundle);
void emit_report_markdown(const ReportBundle& bundle,
                          const std::filesystem::path& path);

// Plot sidecar: the exact numbers drawn for one population.
struct PlotData {
  std::string population_id;
  DimensionScores population;
  DimensionScores us;
  DimensionScores china;
};

std::string plot_sidecar(const PlotData& data);
PlotData parse_plot_sidecar(std::string_view text);
// Grouped bars (population, US, China per dimension) on the left; signed
// differences population - reference on the right.
std::string render_plot_svg(const PlotData& data);

// Writes `<dir>/<population>.data`, then renders `<dir>/<population>.svg`
// from the sidecar as written.
void emit_dimension_plot(const ScoreRow& row, const CountryReference& us,
                         const CountryReference& china,
                         const std::filesystem::path& dir);

// scores.csv, improvements.csv (if computable), report.md and plots/.
void emit_all(const ReportBundle& bundle, const std::filesystem::path& dir);

}  // namespace vsmalign

#endif  // VSMALIGN_REPORT_H_
