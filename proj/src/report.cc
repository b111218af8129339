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

#include "vsmalign/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "vsmalign/errors.h"

namespace vsmalign {
namespace {

constexpr std::string_view kScoresHeader =
    "population,us_distance,china_distance,pdi,idv,mas,uai,lto,ivr";
constexpr std::string_view kSidecarHeader =
    "dimension,population,US,China,diff_US,diff_China";

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
  if (!out) throw Error("write failed: " + path.string());
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(const std::string& s, const std::string& where) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ValidationError(where + ": not a number: '" + s + "'");
  }
}

std::string badge(AlignmentClass c, double average) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "**%s** (avg %.2f)",
                std::string(to_string(c)).c_str(), average);
  return buf;
}

// Escapes text for SVG element content.
std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::vector<std::string> journal_caveats(std::span<const PromptRecord> records) {
  std::vector<std::string> out = {
      "Hofstede recommends comparing at least 10 countries; this report compares "
      "against 2 reference countries."};
  std::set<std::string> clamped;
  long reasked = 0;
  for (const auto& r : records) {
    if (r.annotation.find("temperature clamped") != std::string::npos) {
      clamped.insert(r.population_id);
    }
    if (r.attempt > 1) ++reasked;
  }
  for (const auto& id : clamped) {
    out.push_back("population " + id +
                  " ran below the configured temperature (endpoint limit)");
  }
  if (reasked > 0) {
    out.push_back(std::to_string(reasked) +
                  " requests were re-asks after unparsable, ambiguous or failed "
                  "answers; means reflect the highest parsed attempt");
  }
  return out;
}

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", value);
  std::string s(buf);
  if (s == "-0.00") s = "0.00";
  return s;
}

ReportBundle build_bundle(std::span<const ScoredPopulation> populations,
                          const CountryReference& us,
                          const CountryReference& china,
                          std::vector<std::string> caveats) {
  ReportBundle bundle;
  bundle.us = us;
  bundle.china = china;
  bundle.caveats = std::move(caveats);

  std::set<std::string> seen;
  std::vector<std::string> models;
  std::vector<AlignmentDistance> distances;
  for (const auto& p : populations) {
    if (!seen.insert(p.population_id).second) {
      throw ValidationError("population appears twice: " + p.population_id);
    }
    auto du = alignment_distance(p.scores, us, p.population_id);
    auto dc = alignment_distance(p.scores, china, p.population_id);
    bundle.scores_table.push_back({p.population_id, du.total, dc.total, p.scores});
    bundle.classifications.push_back(
        {p.population_id, us.country, classify(du), du.average});
    bundle.classifications.push_back(
        {p.population_id, china.country, classify(dc), dc.average});
    distances.push_back(std::move(du));
    distances.push_back(std::move(dc));
    if (p.sample_size > 0 && p.sample_size < kMinimumPopulation) {
      bundle.caveats.push_back("population " + p.population_id + " has n=" +
                               std::to_string(p.sample_size) +
                               " (< 20): non-conformant");
    }
    if (auto label = parse_population_label(p.population_id)) {
      if (std::find(models.begin(), models.end(), label->model) == models.end()) {
        models.push_back(label->model);
      }
    }
  }

  // Category comparisons use the reference labels the table is keyed on.
  std::vector<ImprovementSpec> specs;
  for (auto spec : standard_improvements()) {
    spec.country = spec.country == "US" ? us.country : china.country;
    specs.push_back(spec);
  }
  if (models.empty()) {
    bundle.improvements_error = "no populations with parseable labels";
  } else {
    try {
      bundle.improvements_table = compute_improvements(distances, models, specs);
    } catch (const Error& e) {
      bundle.improvements_error = e.what();
    }
  }
  return bundle;
}

std::string scores_csv(const ReportBundle& bundle) {
  std::string out(kScoresHeader);
  out += '\n';
  for (const auto& row : bundle.scores_table) {
    out += row.population_id + ',' + format_number(row.us_total) + ',' +
           format_number(row.china_total);
    for (Dimension d : kAllDimensions) out += ',' + format_number(row.scores[d]);
    out += '\n';
  }
  return out;
}

void emit_scores_csv(const ReportBundle& bundle,
                     const std::filesystem::path& path) {
  write_file(path, scores_csv(bundle));
}

std::vector<ScoredPopulation> read_scores_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read scores CSV: " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kScoresHeader) {
    throw ValidationError(path.string() + ": unexpected header");
  }
  std::vector<ScoredPopulation> out;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto cells = split(line, ',');
    std::string where = path.string() + ":" + std::to_string(line_no);
    if (cells.size() != 9) throw ValidationError(where + ": expected 9 columns");
    ScoredPopulation p;
    p.population_id = cells[0];
    for (int d = 0; d < 6; ++d) {
      p.scores.values[d] = parse_double(cells[3 + d], where);
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::string improvements_csv(const ReportBundle& bundle) {
  if (bundle.improvements_table.empty()) {
    throw ValidationError(bundle.improvements_error.empty()
                              ? "no improvement rows"
                              : bundle.improvements_error);
  }
  std::string out =
      "country,baseline_category,baseline_total,variant_category,"
      "variant_total,improvement_pct\n";
  for (const auto& r : bundle.improvements_table) {
    char pct[32];
    std::snprintf(pct, sizeof(pct), "%.1f",
                  round_reported_percent(r.improvement_pct));
    out += r.country + ',' + r.baseline_label + ',' +
           format_number(r.baseline_total) + ',' + r.variant_label + ',' +
           format_number(r.variant_total) + ',' + pct + '\n';
  }
  return out;
}

void emit_improvements(const ReportBundle& bundle,
                       const std::filesystem::path& path) {
  write_file(path, improvements_csv(bundle));
}

std::string report_markdown(const ReportBundle& bundle) {
  std::ostringstream md;
  md << "# Cultural alignment report\n\n";
  md << "Alignment distance is the sum of absolute differences over the six "
        "dimensions. Strong: average <= 15 (total <= 90). Soft: average in "
        "(15, 20] (total in (90, 120]).\n\n";
  md << "References: " << bundle.us.country << " (";
  for (Dimension d : kAllDimensions) {
    md << to_string(d) << ' ' << format_number(bundle.us.values[d])
       << (d == Dimension::kIVR ? "" : ", ");
  }
  md << "); " << bundle.china.country << " (";
  for (Dimension d : kAllDimensions) {
    md << to_string(d) << ' ' << format_number(bundle.china.values[d])
       << (d == Dimension::kIVR ? "" : ", ");
  }
  md << ").\n\n";

  if (!bundle.caveats.empty()) {
    md << "## Caveats\n\n";
    for (const auto& c : bundle.caveats) md << "- " << c << "\n";
    md << "\n";
  }

  md << "## Populations\n\n";
  md << "| Population | " << bundle.us.country << " distance | "
     << bundle.us.country << " alignment | " << bundle.china.country
     << " distance | " << bundle.china.country
     << " alignment | PDI | IDV | MAS | UAI | LTO | IVR |\n";
  md << "|---|---|---|---|---|---|---|---|---|---|---|\n";
  for (std::size_t i = 0; i < bundle.scores_table.size(); ++i) {
    const auto& row = bundle.scores_table[i];
    const auto& cu = bundle.classifications[2 * i];
    const auto& cc = bundle.classifications[2 * i + 1];
    md << "| " << row.population_id << " | " << format_number(row.us_total)
       << " | " << badge(cu.alignment, cu.average) << " | "
       << format_number(row.china_total) << " | "
       << badge(cc.alignment, cc.average);
    for (Dimension d : kAllDimensions) md << " | " << format_number(row.scores[d]);
    md << " |\n";
  }
  md << "\n## Category comparison\n\n";
  if (bundle.improvements_table.empty()) {
    md << "Not available: " << bundle.improvements_error << "\n";
  } else {
    md << "| Country | Baseline | Total | Variant | Total | Improvement |\n";
    md << "|---|---|---|---|---|---|\n";
    for (const auto& r : bundle.improvements_table) {
      char pct[32];
      std::snprintf(pct, sizeof(pct), "%.1f%%",
                    round_reported_percent(r.improvement_pct));
      md << "| " << r.country << " | " << r.baseline_label << " | "
         << format_number(r.baseline_total) << " | " << r.variant_label
         << " | " << format_number(r.variant_total) << " | " << pct << " |\n";
    }
  }
  md << "\n## Plots\n\n";
  for (const auto& row : bundle.scores_table) {
    md << "- [" << row.population_id << "](plots/" << row.population_id
       << ".svg) (data: plots/" << row.population_id << ".data)\n";
  }
  return md.str();
}

void emit_report_markdown(const ReportBundle& bundle,
                          const std::filesystem::path& path) {
  write_file(path, report_markdown(bundle));
}

std::string plot_sidecar(const PlotData& data) {
  std::string out = "# population=" + data.population_id + "\n";
  out += kSidecarHeader;
  out += '\n';
  for (Dimension d : kAllDimensions) {
    out += std::string(to_string(d)) + ',' + format_number(data.population[d]) +
           ',' + format_number(data.us[d]) + ',' + format_number(data.china[d]) +
           ',' + format_number(data.population[d] - data.us[d]) + ',' +
           format_number(data.population[d] - data.china[d]) + '\n';
  }
  return out;
}

PlotData parse_plot_sidecar(std::string_view text) {
  PlotData data;
  std::istringstream in{std::string(text)};
  std::string line;
  constexpr std::string_view kPrefix = "# population=";
  if (!std::getline(in, line) || line.rfind(kPrefix, 0) != 0) {
    throw ValidationError("plot sidecar: missing population line");
  }
  data.population_id = line.substr(kPrefix.size());
  if (!std::getline(in, line) || line != kSidecarHeader) {
    throw ValidationError("plot sidecar: unexpected header");
  }
  for (Dimension d : kAllDimensions) {
    if (!std::getline(in, line)) throw ValidationError("plot sidecar: truncated");
    auto cells = split(line, ',');
    if (cells.size() != 6 || cells[0] != to_string(d)) {
      throw ValidationError("plot sidecar: bad row for " +
                            std::string(to_string(d)));
    }
    data.population[d] = parse_double(cells[1], "plot sidecar");
    data.us[d] = parse_double(cells[2], "plot sidecar");
    data.china[d] = parse_double(cells[3], "plot sidecar");
  }
  return data;
}

std::string render_plot_svg(const PlotData& data) {
  constexpr double kPanelW = 460, kPanelH = 300, kTop = 50, kLeft = 50;
  constexpr double kGap = 60;
  constexpr const char* kColors[] = {"#4c72b0", "#dd8452", "#c44e52"};

  double lo = 0, hi = 100;
  double max_diff = 10;
  for (Dimension d : kAllDimensions) {
    for (double v : {data.population[d], data.us[d], data.china[d]}) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    max_diff = std::max({max_diff, std::abs(data.population[d] - data.us[d]),
                         std::abs(data.population[d] - data.china[d])});
  }

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
      << 2 * kPanelW + kGap + 2 * kLeft << "\" height=\"" << kPanelH + kTop + 60
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<text x=\"" << kLeft << "\" y=\"20\" font-size=\"15\">"
      << xml_escape(data.population_id) << ": dimensions vs US and China</text>\n";

  auto panel = [&](double x0, double vmin, double vmax, int series,
                   const char* title, auto value_of) {
    auto y_of = [&](double v) {
      return kTop + kPanelH * (vmax - v) / (vmax - vmin);
    };
    svg << "<text x=\"" << x0 << "\" y=\"" << kTop - 8 << "\">" << title
        << "</text>\n";
    svg << "<line x1=\"" << x0 << "\" y1=\"" << y_of(0) << "\" x2=\""
        << x0 + kPanelW << "\" y2=\"" << y_of(0)
        << "\" stroke=\"#333\"/>\n";
    const double group_w = kPanelW / 6.0;
    const double bar_w = (group_w - 12) / series;
    for (int d = 0; d < 6; ++d) {
      double gx = x0 + d * group_w + 6;
      for (int s = 0; s < series; ++s) {
        double v = value_of(static_cast<Dimension>(d), s);
        double y = std::min(y_of(v), y_of(0));
        double h = std::abs(y_of(v) - y_of(0));
        svg << "<rect x=\"" << gx + s * bar_w << "\" y=\"" << y
            << "\" width=\"" << bar_w - 1 << "\" height=\"" << h
            << "\" fill=\"" << kColors[series == 3 ? s : s + 1] << "\"><title>"
            << format_number(v) << "</title></rect>\n";
      }
      svg << "<text x=\"" << gx + (group_w - 12) / 2 << "\" y=\""
          << kTop + kPanelH + 16 << "\" text-anchor=\"middle\">"
          << to_string(static_cast<Dimension>(d)) << "</text>\n";
    }
  };

  panel(kLeft, lo, hi, 3, "Scores", [&](Dimension d, int s) {
    return s == 0 ? data.population[d] : s == 1 ? data.us[d] : data.china[d];
  });
  panel(kLeft + kPanelW + kGap, -max_diff, max_diff, 2,
        "Population minus reference", [&](Dimension d, int s) {
          return data.population[d] - (s == 0 ? data.us[d] : data.china[d]);
        });

  double ly = kTop + kPanelH + 40;
  const char* names[] = {"population", "US", "China"};
  for (int s = 0; s < 3; ++s) {
    double lx = kLeft + s * 120;
    svg << "<rect x=\"" << lx << "\" y=\"" << ly - 10
        << "\" width=\"12\" height=\"12\" fill=\"" << kColors[s] << "\"/>"
        << "<text x=\"" << lx + 16 << "\" y=\"" << ly << "\">" << names[s]
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void emit_dimension_plot(const ScoreRow& row, const CountryReference& us,
                         const CountryReference& china,
                         const std::filesystem::path& dir) {
  PlotData data{row.population_id, row.scores, us.values, china.values};
  auto sidecar = dir / (row.population_id + ".data");
  write_file(sidecar, plot_sidecar(data));

  std::ifstream in(sidecar, std::ios::binary);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  write_file(dir / (row.population_id + ".svg"),
             render_plot_svg(parse_plot_sidecar(text)));
}

void emit_all(const ReportBundle& bundle, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  emit_scores_csv(bundle, dir / "scores.csv");
  if (!bundle.improvements_table.empty()) {
    emit_improvements(bundle, dir / "improvements.csv");
  }
  emit_report_markdown(bundle, dir / "report.md");
  for (const auto& row : bundle.scores_table) {
    emit_dimension_plot(row, bundle.us, bundle.china, dir / "plots");
  }
}

}  // namespace vsmalign
