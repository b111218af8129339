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

#include "vsmalign/published_results.h"

namespace vsmalign {

std::span<const DistanceObservation> published_population_rows() {
  // label, US distance, China distance, then PDI IDV MAS UAI LTO IVR.
  static const std::vector<DistanceObservation> kRows = [] {
    struct Raw {
      const char* label;
      double us, china;
      std::array<double, 6> dims;
    };
    static constexpr Raw kRaw[] = {
        {"GPT-5_sc_CH", 182.25, 148.75, {44.5, 48.25, 48.25, 71.25, 95.5, 41.5}},
        {"GPT-5_sc_US", 147.5, 285.5, {7.25, 99.0, 43.0, 31.25, 60.25, 106.75}},
        {"GPT-5_sc", 98.5, 213.0, {10.75, 81.5, 53.5, 30.0, 52.0, 58.75}},
        {"GPT-5_en_CH", 268.25, 164.25, {85.5, -6.0, 57.0, 75.0, 41.0, -8.75}},
        {"GPT-5_en_US", 120.75, 276.25, {5.75, 86.75, 64.0, 23.75, 44.0, 108.0}},
        {"GPT-5_en", 76.75, 222.75, {22.5, 85.0, 65.75, 26.25, 45.25, 78.5}},
        {"DSV3.1_sc_CH", 102.0, 221.5, {25.5, 58.75, 64.0, 71.25, 50.0, 72.0}},
        {"DSV3.1_sc_US", 117.25, 250.75, {25.0, 90.25, 27.25, 43.0, 73.5, 84.25}},
        {"DSV3.1_sc", 145.25, 195.75, {30.25, 64.0, 39.5, 66.25, 79.5, 55.75}},
        {"DSV3.1_en_CH", 155.0, 170.5, {34.5, 43.0, 85.0, 66.25, 51.25, 35.0}},
        {"DSV3.1_en_US", 119.5, 317.5, {13.25, 106.0, 15.0, 28.75, 29.0, 78.5}},
        {"DSV3.1_en", 76.25, 245.25, {43.0, 104.25, 32.5, 43.75, 52.75, 66.5}},
        {"GPT-4_sc_CH", 167.5, 230.0, {15.75, 46.5, 48.25, 88.75, 44.0, 43.75}},
        {"GPT-4_sc_US", 152.75, 251.25, {20.5, 46.5, 44.75, 82.5, 50.25, 78.75}},
        {"GPT-4_sc", 185.25, 227.75, {0.0, 43.0, 58.75, 91.25, 72.75, 66.0}},
        {"GPT-4_en_CH", 165.0, 161.0, {48.25, 34.25, 74.5, 82.5, 44.0, 35.0}},
        {"GPT-4_en_US", 124.75, 189.25, {48.5, 53.5, 37.75, 58.75, 65.75, 70.0}},
        {"GPT-4_en", 191.75, 127.75, {57.5, 51.75, 39.5, 56.25, 96.0, 35.75}},
        {"GPT-4.1_sc_CH", 175.75, 93.25, {96.5, 44.75, 65.75, 32.5, 45.25, 31.5}},
        {"GPT-4.1_sc_US", 186.75, 173.75, {94.25, 76.25, 44.75, 31.25, 81.0, 98.75}},
        {"GPT-4.1_sc", 182.75, 89.25, {93.0, 51.75, 71.0, 32.5, 71.75, 45.75}},
        {"GPT-4.1_en_CH", 178.5, 160.5, {100.0, 46.5, 48.25, 63.75, 44.0, 43.5}},
        {"GPT-4.1_en_US", 105.5, 259.5, {17.5, 81.5, 32.5, 32.5, 44.0, 80.5}},
        {"GPT-4.1_en", 155.0, 240.0, {11.25, 78.0, 32.5, 8.75, 44.0, 39.5}},
        {"GPT-4o_sc_CH", 136.75, 122.25, {78.25, 62.25, 53.5, 33.75, 72.0, 71.0}},
        {"GPT-4o_sc_US", 158.5, 169.0, {66.0, 76.25, 71.0, 35.75, 83.75, 108.75}},
        {"GPT-4o_sc", 136.5, 186.0, {65.25, 93.75, 53.5, 33.75, 81.75, 100.0}},
        {"GPT-4o_en_CH", 129.75, 114.75, {82.75, 43.0, 60.5, 39.5, 42.75, 53.75}},
        {"GPT-4o_en_US", 93.0, 196.5, {38.0, 51.75, 39.5, 30.5, 37.5, 70.25}},
        {"GPT-4o_en", 86.5, 215.5, {36.75, 60.5, 43.0, 40.0, 43.0, 78.75}},
        {"DSV3_sc_CH", 63.25, 243.25, {50.0, 97.25, 57.0, 57.5, 44.0, 80.5}},
        {"DSV3_sc_US", 92.25, 241.25, {25.5, 79.75, 51.75, 57.5, 58.25, 80.5}},
        {"DSV3_sc", 119.5, 233.5, {39.5, 102.5, 46.5, 57.5, 94.0, 80.5}},
        {"DSV3_en_CH", 139.25, 176.75, {28.25, 9.75, 67.5, 57.5, 21.0, 43.75}},
        {"DSV3_en_US", 118.75, 283.25, {32.5, 55.25, 32.5, 57.5, 4.0, 80.5}},
        {"DSV3_en", 68.5, 298.5, {32.5, 95.5, 32.5, 57.5, 29.0, 80.5}},
    };
    std::vector<DistanceObservation> out;
    for (const auto& r : kRaw) {
      out.push_back({r.label, DimensionScores{r.dims}, r.us, r.china});
    }
    return out;
  }();
  return kRows;
}

std::span<const PublishedImprovement> published_improvements() {
  static const std::vector<PublishedImprovement> kRows = {
      {"US", "Simp. Chinese", 867.75, "English", 654.75, 24.6},
      {"US", "English", 654.75, "+ US Prompting", 682.25, -4.2},
      {"US", "Simp. Chinese", 867.75, "+ US Prompting", 855.0, 1.5},
      {"China", "English", 1349.75, "Simp. Chinese", 1145.25, 15.2},
      {"China", "Simp. Chinese", 1145.25, "+ Chinese Prompting", 1059.0, 7.5},
      {"China", "English", 1349.75, "+ Chinese Prompting", 947.75, 29.8},
  };
  return kRows;
}

const std::vector<std::string>& published_models() {
  static const std::vector<std::string> kModels = {
      "GPT-5", "DSV3.1", "GPT-4", "GPT-4.1", "GPT-4o", "DSV3"};
  return kModels;
}

}  // namespace vsmalign
