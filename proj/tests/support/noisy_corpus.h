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

#ifndef VSMALIGN_TESTS_SUPPORT_NOISY_CORPUS_H_
#define VSMALIGN_TESTS_SUPPORT_NOISY_CORPUS_H_

// Generator of synthetic model replies with a known embedded score. The
// generator's ground truth is the oracle for parser accuracy.

#include <array>
#include <random>
#include <string>
#include <vector>

#include "vsmalign/corpus.h"

namespace vsmalign::testing {

struct NoisyCase {
  std::string text;
  Language language;
  int truth;
};

inline std::vector<NoisyCase> noisy_corpus(std::size_t count,
                                           std::uint32_t seed = 20240601) {
  static const std::array<const char*, 5> kEnWords = {"one", "two", "three",
                                                      "four", "five"};
  static const std::array<const char*, 5> kEnWordsCap = {"One", "Two", "Three",
                                                         "Four", "Five"};
  static const std::array<const char*, 5> kZhWords = {"一", "二", "三", "四",
                                                      "五"};
  static const std::array<const char*, 5> kEnAnchors = {
      "of utmost importance", "very important", "of moderate importance",
      "of little importance", "of very little or no importance"};
  static const std::array<const char*, 5> kZhAnchors = {
      "极其重要", "非常重要", "中等重要", "不太重要", "非常不重要"};
  static const std::array<const char*, 6> kPad = {"", " ", "\n", "  ", "\n\n",
                                                  "\t"};

  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> score(1, 5);
  std::uniform_int_distribution<int> pad(0, static_cast<int>(kPad.size()) - 1);

  // Each template renders (score, other score) into a reply.
  struct Template {
    Language language;
    std::string (*render)(int n, int m);
  };
  static const std::vector<Template> kTemplates = {
      {Language::kEnglish, [](int n, int) { return "Your score: " + std::to_string(n); }},
      {Language::kEnglish, [](int n, int) { return std::to_string(n); }},
      {Language::kEnglish, [](int n, int) { return "Score: " + std::to_string(n); }},
      {Language::kEnglish, [](int n, int) { return "My score is " + std::to_string(n) + "."; }},
      {Language::kEnglish, [](int n, int) { return "I would give it a " + std::to_string(n) + "."; }},
      {Language::kEnglish, [](int n, int) { return "**" + std::to_string(n) + "**"; }},
      {Language::kEnglish, [](int n, int) { return std::to_string(n) + " - " + kEnAnchors[n - 1]; }},
      {Language::kEnglish, [](int n, int) {
         return "Your score: " + std::to_string(n) +
                "\n\nThe average person values this to that degree.";
       }},
      {Language::kEnglish, [](int n, int) { return "On a scale of 1 to 5, I'd say " + std::to_string(n) + "."; }},
      {Language::kEnglish, [](int n, int) { return std::to_string(n) + "/5"; }},
      {Language::kEnglish, [](int n, int) { return "Score = " + std::to_string(n) + " (out of 5)"; }},
      {Language::kEnglish, [](int n, int) { return "I'd rate this a " + std::to_string(n) + " out of 5."; }},
      {Language::kEnglish, [](int n, int) { return std::string(kEnWordsCap[n - 1]); }},
      {Language::kEnglish, [](int n, int) { return "I'd say " + std::string(kEnWords[n - 1]) + "."; }},
      {Language::kEnglish, [](int n, int) { return "Answer: " + std::to_string(n); }},
      {Language::kEnglish, [](int n, int) { return "Rating: " + std::to_string(n); }},
      {Language::kEnglish, [](int n, int) {
         return "The average person would probably answer " + std::to_string(n) + ".";
       }},
      {Language::kEnglish, [](int n, int) {
         return "Your score: " + std::to_string(n) + " (" + kEnAnchors[n - 1] + ")";
       }},
      {Language::kEnglish, [](int n, int) {
         return "Based on the scale provided (1 = always, 5 = never), the score is " +
                std::to_string(n) + ".";
       }},
      {Language::kEnglish, [](int n, int) {
         return "Score: " + std::to_string(n) + "\nReason: most people feel this way.";
       }},
      {Language::kEnglish, [](int n, int) { return "YOUR SCORE: " + std::to_string(n); }},
      {Language::kEnglish, [](int n, int) { return "Score - " + std::to_string(n) + "!"; }},
      // Genuinely hedged: two different values before the final answer.
      {Language::kEnglish, [](int n, int m) {
         return "Hmm, either " + std::to_string(n) + " or " + std::to_string(m) +
                ". Final answer: " + std::to_string(n);
       }},
      {Language::kSimplifiedChinese, [](int n, int) { return "您的分数是：" + std::to_string(n); }},
      {Language::kSimplifiedChinese, [](int n, int) { return std::to_string(n); }},
      {Language::kSimplifiedChinese, [](int n, int) { return "我的分数是：" + std::to_string(n); }},
      {Language::kSimplifiedChinese, [](int n, int) { return "分数：" + std::to_string(n) + "分"; }},
      {Language::kSimplifiedChinese, [](int n, int) { return "评分：" + std::to_string(n); }},
      {Language::kSimplifiedChinese, [](int n, int) { return "我会给" + std::to_string(n) + "分。"; }},
      {Language::kSimplifiedChinese, [](int n, int) { return std::string(kZhWords[n - 1]); }},
      {Language::kSimplifiedChinese, [](int n, int) { return "回答：" + std::string(kZhWords[n - 1]); }},
      {Language::kSimplifiedChinese, [](int n, int) {
         return "根据1到5的等级，我的评分为" + std::to_string(n) + "。";
       }},
      {Language::kSimplifiedChinese, [](int n, int) {
         return "普通人大概会给出" + std::to_string(n) + "分（" + kZhAnchors[n - 1] + "）";
       }},
      {Language::kSimplifiedChinese, [](int n, int) { return "您的分数：**" + std::to_string(n) + "**"; }},
      {Language::kSimplifiedChinese, [](int n, int) { return "分数为 " + std::to_string(n); }},
      {Language::kSimplifiedChinese, [](int n, int) {
         return "您的分数是：" + std::to_string(n) + "\n理由略。";
       }},
  };

  std::uniform_int_distribution<std::size_t> pick(0, kTemplates.size() - 1);
  std::vector<NoisyCase> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto& t = kTemplates[pick(rng)];
    int n = score(rng);
    int m = n % 5 + 1;  // always differs from n
    std::string text = std::string(kPad[pad(rng)]) + t.render(n, m) + kPad[pad(rng)];
    out.push_back({std::move(text), t.language, n});
  }
  return out;
}

}  // namespace vsmalign::testing

#endif  // VSMALIGN_TESTS_SUPPORT_NOISY_CORPUS_H_
