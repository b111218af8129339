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

#include <random>
#include <string>

#include "doctest.h"
#include "support/noisy_corpus.h"
#include "vsmalign/parser.h"

namespace vsmalign {
namespace {

constexpr auto kEn = Language::kEnglish;
constexpr auto kSc = Language::kSimplifiedChinese;

TEST_CASE("canonical English form uses the score keyword") {
  auto r = parse_likert("Your score: 4", kEn);
  REQUIRE(r.ok());
  CHECK(r.value() == 4);
  CHECK(r.score().rule == ExtractionRule::kScoreKeyword);
  CHECK(r.score().confidence == Confidence::kHigh);
}

TEST_CASE("a bare integer is an exact match") {
  auto r = parse_likert("3", kEn);
  REQUIRE(r.ok());
  CHECK(r.value() == 3);
  CHECK(r.score().rule == ExtractionRule::kExactInteger);
  CHECK(r.score().confidence == Confidence::kHigh);
  CHECK(parse_likert("  5 \n", kEn).score().rule == ExtractionRule::kExactInteger);
}

TEST_CASE("Chinese canonical form uses the score keyword") {
  auto r = parse_likert("我的分数是：2", kSc);
  REQUIRE(r.ok());
  CHECK(r.value() == 2);
  CHECK(r.score().rule == ExtractionRule::kScoreKeyword);
  CHECK(r.score().confidence == Confidence::kHigh);
}

TEST_CASE("hedged answers are ambiguous") {
  auto r = parse_likert("I'd say 2, maybe 4", kEn);
  REQUIRE_FALSE(r.ok());
  CHECK(r.failure() == ParseFailure::kAmbiguous);
}

TEST_CASE("a sole in-range integer is extracted") {
  auto r = parse_likert("I would go with 4 here.", kEn);
  REQUIRE(r.ok());
  CHECK(r.value() == 4);
  CHECK(r.score().rule == ExtractionRule::kSoleInteger);
}

TEST_CASE("digit words in both languages") {
  auto en = parse_likert("Three.", kEn);
  REQUIRE(en.ok());
  CHECK(en.value() == 3);
  CHECK(en.score().rule == ExtractionRule::kDigitWord);

  auto zh = parse_likert("四", kSc);
  REQUIRE(zh.ok());
  CHECK(zh.value() == 4);
  CHECK(zh.score().rule == ExtractionRule::kDigitWord);

  CHECK_FALSE(parse_likert("someone", kEn).ok());
  CHECK_FALSE(parse_likert("四", kEn).ok());
}

TEST_CASE("out-of-range integers are ignored, never clamped") {
  for (const char* text : {"0", "6", "10", "Your score: 7", "score: 0", "-2"}) {
    CAPTURE(text);
    auto r = parse_likert(text, kEn);
    CHECK_FALSE(r.ok());
  }
  auto r = parse_likert("Out of 10 options I pick 2", kEn);
  REQUIRE(r.ok());
  CHECK(r.value() == 2);
}

TEST_CASE("scale mentions are not candidates") {
  auto r = parse_likert("On a scale of 1 to 5, I'd say 2.", kEn);
  REQUIRE(r.ok());
  CHECK(r.value() == 2);
  CHECK(parse_likert("4/5", kEn).value() == 4);
  CHECK(parse_likert("根据1到5的等级，我的评分为3。", kSc).value() == 3);
}

TEST_CASE("keyword outranks other integers") {
  auto r = parse_likert("Between 2 and 4 people would agree. Score: 4", kEn);
  REQUIRE(r.ok());
  CHECK(r.value() == 4);
  CHECK(r.score().rule == ExtractionRule::kScoreKeyword);
}

TEST_CASE("conflicting keyed values are ambiguous") {
  auto r = parse_likert("Score: 2. Actually, score: 5.", kEn);
  REQUIRE_FALSE(r.ok());
  CHECK(r.failure() == ParseFailure::kAmbiguous);
}

TEST_CASE("empty or refusing answers are unparsable") {
  for (const char* text : {"", "   ", "I cannot answer that.", "N/A"}) {
    auto r = parse_likert(text, kEn);
    REQUIRE_FALSE(r.ok());
    CHECK(r.failure() == ParseFailure::kUnparsable);
  }
}

TEST_CASE("fullwidth digits are normalised") {
  auto r = parse_likert("您的分数是：５", kSc);
  REQUIRE(r.ok());
  CHECK(r.value() == 5);
}

TEST_CASE("canonical rendering round-trips in both languages") {
  for (auto lang : {kEn, kSc}) {
    for (int n = 1; n <= 5; ++n) {
      auto text = canonical_response(n, lang);
      auto r = parse_likert(text, lang);
      REQUIRE(r.ok());
      CHECK(r.value() == n);
      CHECK(r.score().confidence == Confidence::kHigh);
    }
  }
  CHECK(canonical_response(3, kEn) == "Your score: 3");
  CHECK(canonical_response(3, kSc) == "您的分数是：3");
}

TEST_CASE("generated noisy corpus reaches at least 95% exact extraction") {
  auto corpus = testing::noisy_corpus(500);
  int exact = 0;
  for (const auto& c : corpus) {
    auto r = parse_likert(c.text, c.language);
    if (r.ok()) {
      REQUIRE(r.value() >= 1);
      REQUIRE(r.value() <= 5);
      if (r.value() == c.truth) ++exact;
    }
  }
  MESSAGE("exact extraction: " << exact << "/500");
  CHECK(exact >= 475);
}

TEST_CASE("random text never yields an out-of-range value and parsing is deterministic") {
  static const std::string kAlphabet[] = {
      "0", "1", "2", "3", "4", "5", "6", "9", "10", "-", "/", " ", ":", "：",
      "score", "分数", "评分", "five", "三", "二十", "out of", "到", "\n", "a",
      ".", "是", "分", "１", "3.5", "x2", "one", "五"};
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> len(0, 12);
  std::uniform_int_distribution<std::size_t> pick(0, std::size(kAlphabet) - 1);
  for (int i = 0; i < 20000; ++i) {
    std::string text;
    for (int k = len(rng); k > 0; --k) text += kAlphabet[pick(rng)];
    for (auto lang : {kEn, kSc}) {
      auto a = parse_likert(text, lang);
      auto b = parse_likert(text, lang);
      REQUIRE(a.ok() == b.ok());
      if (a.ok()) {
        REQUIRE(a.value() >= 1);
        REQUIRE(a.value() <= 5);
        REQUIRE(a.value() == b.value());
        REQUIRE(a.score().rule == b.score().rule);
      } else {
        REQUIRE(a.failure() == b.failure());
      }
    }
  }
}

TEST_CASE("invalid UTF-8 does not crash the parser") {
  std::string text = "Your score: \xff\xfe 3";
  auto r = parse_likert(text, kEn);
  if (r.ok()) CHECK(r.value() == 3);
}

}  // namespace
}  // namespace vsmalign
