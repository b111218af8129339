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

#ifndef VSMALIGN_PUBLISHED_RESULTS_H_
#define VSMALIGN_PUBLISHED_RESULTS_H_

#include <span>
#include <string>
#include <vector>

#include "vsmalign/alignment.h"

namespace vsmalign {

// Golden data: the published per-population dimension scores of six models
// under six prompting conditions, with their printed US and China distances.
// Row order follows the published table.
std::span<const DistanceObservation> published_population_rows();

// One printed row of the category comparison table.
struct PublishedImprovement {
  std::string country;
  std::string baseline_label;
  double baseline_total;
  std::string variant_label;
  double variant_total;
  double printed_pct;
};

std::span<const PublishedImprovement> published_improvements();

// Model labels as used in the population ids above.
const std::vector<std::string>& published_models();

}  // namespace vsmalign

#endif  // VSMALIGN_PUBLISHED_RESULTS_H_
