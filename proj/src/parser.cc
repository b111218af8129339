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

#include "vsmalign/parser.h"

#include <algorithm>
#include <array>
#include <regex>
#include <set>
#include <vector>

namespace vsmalign {
namespace {

struct IntToken {
  std::size_t begin;
  std::size_t end;
  int value;  // -1 when the token is not an integer in 1..5
};

bool is_ascii_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Fullwidth digits to ASCII and ASCII letters to lower case; everything else
// passes through byte for byte.
std::string normalize(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    auto b = static_cast<unsigned char>(text[i]);
    if (b == 0xEF && i + 2 < text.size() &&
        static_cast<unsigned char>(text[i + 1]) == 0xBC) {
      auto c = static_cast<unsigned char>(text[i + 2]);
      if (c >= 0x90 && c <= 0x99) {
        out.push_back(static_cast<char>('0' + (c - 0x90)));
        i += 2;
        continue;
      }
    }
    out.push_back(b >= 'A' && b <= 'Z' ? static_cast<char>(b - 'A' + 'a')
                                       : text[i]);
  }
  return out;
}

std::string strip_scale_mentions(const std::string& text) {
  static const std::regex range(
      R"((^|[^0-9.])[1-5]\s*(?:-|–|—|~|to|through|至|到)\s*[1-5](?![0-9.]))");
  static const std::regex out_of(R"(\s*(?:out of|outof)\s*(?:5|five)(?![0-9]))");
  static const std::regex slash(R"(\s*/\s*5(?![0-9.]))");
  static const std::regex full_marks(R"(满分\s*5\s*分?)");
  std::string s = std::regex_replace(text, range, "$1 ");
  s = std::regex_replace(s, out_of, " ");
  s = std::regex_replace(s, slash, " ");
  return std::regex_replace(s, full_marks, " ");
}

std::vector<IntToken> integer_tokens(const std::string& s) {
  std::vector<IntToken> tokens;
  for (std::size_t i = 0; i < s.size();) {
    if (!is_digit(s[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < s.size() && is_digit(s[j])) ++j;
    bool decimal_tail = i >= 2 && s[i - 1] == '.' && is_digit(s[i - 2]);
    bool decimal_head = j + 1 < s.size() && s[j] == '.' && is_digit(s[j + 1]);
    bool negative = i > 0 && s[i - 1] == '-' && (i == 1 || !is_digit(s[i - 2]));
    bool glued = negative || (i > 0 && is_ascii_alpha(s[i - 1])) ||
                 (j < s.size() && is_ascii_alpha(s[j]));
    int value = -1;
    if (!decimal_tail && !decimal_head && !glued && j - i == 1) {
      int v = s[i] - '0';
      if (v >= 1 && v <= 5) value = v;
    }
    tokens.push_back({i, j, value});
    i = j;
  }
  return tokens;
}

bool starts_with_at(const std::string& s, std::size_t pos, std::string_view w) {
  return s.compare(pos, w.size(), w) == 0;
}

// Characters and short words allowed between a score keyword and its number.
std::size_t skip_connectives(const std::string& s, std::size_t pos) {
  static constexpr std::string_view kPunct = " \t\r\n:=*-\"'`_#>()[]{}.,!~|";
  static constexpr std::array<std::string_view, 16> kWideFillers = {
      "：", "，", "“", "”", "「", "」", "【", "】", "（", "）", "、",
      "应该是", "大概是", "可能是", "会是", "是"};
  static constexpr std::array<std::string_view, 4> kCjkWords = {"为", "给", "打", "应为"};
  static constexpr std::array<std::string_view, 16> kWords = {
      "is",    "of",  "would", "will", "be",     "was", "it",    "a",
      "an",    "i",   "give",  "at",   "around", "my",  "final", "s"};
  for (int steps = 0; steps < 24 && pos < s.size(); ++steps) {
    if (kPunct.find(s[pos]) != std::string_view::npos) {
      ++pos;
      continue;
    }
    bool advanced = false;
    for (auto w : kWideFillers) {
      if (starts_with_at(s, pos, w)) {
        pos += w.size();
        advanced = true;
        break;
      }
    }
    if (!advanced) {
      for (auto w : kCjkWords) {
        if (starts_with_at(s, pos, w)) {
          pos += w.size();
          advanced = true;
          break;
        }
      }
    }
    if (!advanced) {
      for (auto w : kWords) {
        std::size_t end = pos + w.size();
        if (starts_with_at(s, pos, w) &&
            (end >= s.size() || !is_ascii_alpha(s[end]))) {
          pos = end;
          advanced = true;
          break;
        }
      }
    }
    if (!advanced) break;
  }
  return pos;
}

std::set<int> keyword_values(const std::string& s,
                             const std::vector<IntToken>& tokens) {
  static constexpr std::array<std::string_view, 3> kKeywords = {"score", "分数",
                                                                "评分"};
  std::set<int> values;
  for (auto kw : kKeywords) {
    for (auto at = s.find(kw); at != std::string::npos;
         at = s.find(kw, at + kw.size())) {
      std::size_t pos = skip_connectives(s, at + kw.size());
      auto tok = std::find_if(tokens.begin(), tokens.end(),
                              [&](const IntToken& t) { return t.begin == pos; });
      if (tok != tokens.end() && tok->value > 0) values.insert(tok->value);
    }
  }
  return values;
}

std::optional<int> exact_integer(const std::string& s) {
  static constexpr std::string_view kTrim = " \t\r\n*\"'`.!()[]";
  auto b = s.find_first_not_of(kTrim);
  if (b == std::string::npos) return std::nullopt;
  auto e = s.find_last_not_of(kTrim);
  std::string core = s.substr(b, e - b + 1);
  // Trailing full stop in Chinese.
  while (core.size() > 3 && core.compare(core.size() - 3, 3, "。") == 0) {
    core.resize(core.size() - 3);
  }
  if (core.size() == 1 && core[0] >= '1' && core[0] <= '5') return core[0] - '0';
  return std::nullopt;
}

// Decodes the UTF-8 code point at `pos`; returns 0 and advances by one on
// malformed input.
char32_t decode_at(const std::string& s, std::size_t pos, std::size_t* len) {
  auto b = static_cast<unsigned char>(s[pos]);
  int n = b < 0x80 ? 1 : (b >> 5) == 0x6 ? 2 : (b >> 4) == 0xE ? 3
                     : (b >> 3) == 0x1E  ? 4
                                         : 0;
  if (n == 0 || pos + n > s.size()) {
    *len = 1;
    return 0;
  }
  char32_t cp = n == 1 ? b : b & (0xFF >> (n + 1));
  for (int k = 1; k < n; ++k) cp = (cp << 6) | (s[pos + k] & 0x3F);
  *len = n;
  return cp;
}

bool is_ideograph(char32_t cp) { return cp >= 0x4E00 && cp <= 0x9FFF; }

int chinese_numeral(char32_t cp) {
  switch (cp) {
    case U'一': return 1;
    case U'二': return 2;
    case U'三': return 3;
    case U'四': return 4;
    case U'五': return 5;
    default: return 0;
  }
}

std::set<int> digit_word_values(const std::string& s, Language language) {
  static constexpr std::array<std::string_view, 5> kWords = {
      "one", "two", "three", "four", "five"};
  std::set<int> values;
  for (std::size_t i = 0; i < s.size();) {
    if (!is_ascii_alpha(s[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < s.size() && is_ascii_alpha(s[j])) ++j;
    std::string_view word(s.data() + i, j - i);
    for (std::size_t k = 0; k < kWords.size(); ++k) {
      if (word == kWords[k]) values.insert(static_cast<int>(k) + 1);
    }
    i = j;
  }
  if (language != Language::kSimplifiedChinese) return values;

  std::vector<char32_t> cps;
  for (std::size_t i = 0; i < s.size();) {
    std::size_t len;
    cps.push_back(decode_at(s, i, &len));
    i += len;
  }
  static const std::u32string kBefore = U"是为给打选";
  for (std::size_t i = 0; i < cps.size(); ++i) {
    int v = chinese_numeral(cps[i]);
    if (v == 0) continue;
    bool prev_ok = i == 0 || !is_ideograph(cps[i - 1]) ||
                   kBefore.find(cps[i - 1]) != std::u32string::npos;
    bool next_ok = i + 1 == cps.size() || !is_ideograph(cps[i + 1]) ||
                   cps[i + 1] == U'分';
    if (prev_ok && next_ok) values.insert(v);
  }
  return values;
}

std::string join(const std::set<int>& values) {
  std::string out;
  for (int v : values) out += (out.empty() ? "" : ", ") + std::to_string(v);
  return out;
}

}  // namespace

std::string_view to_string(ExtractionRule rule) {
  switch (rule) {
    case ExtractionRule::kScoreKeyword: return "score-keyword";
    case ExtractionRule::kExactInteger: return "exact-trailing-integer";
    case ExtractionRule::kSoleInteger: return "sole-integer";
    case ExtractionRule::kDigitWord: return "digit-word";
  }
  return "unknown";
}

std::string_view to_string(ParseFailure failure) {
  return failure == ParseFailure::kAmbiguous ? "ambiguous" : "unparsable";
}

ParseResult parse_likert(std::string_view text, Language language) {
  if (text.empty()) return {ParseFailure::kUnparsable, "empty response"};

  const std::string normalized = normalize(text);
  const std::string stripped = strip_scale_mentions(normalized);
  const auto tokens = integer_tokens(stripped);

  auto keyed = keyword_values(stripped, tokens);
  if (keyed.size() == 1) {
    return ParsedScore{*keyed.begin(), ExtractionRule::kScoreKeyword,
                       Confidence::kHigh};
  }
  if (keyed.size() > 1) {
    return {ParseFailure::kAmbiguous, "conflicting keyed scores: " + join(keyed)};
  }

  if (auto v = exact_integer(normalized)) {
    return ParsedScore{*v, ExtractionRule::kExactInteger, Confidence::kHigh};
  }

  std::set<int> in_range;
  for (const auto& t : tokens) {
    if (t.value > 0) in_range.insert(t.value);
  }
  if (in_range.size() == 1) {
    return ParsedScore{*in_range.begin(), ExtractionRule::kSoleInteger,
                       Confidence::kLow};
  }
  if (in_range.size() > 1) {
    return {ParseFailure::kAmbiguous, "conflicting integers: " + join(in_range)};
  }

  auto words = digit_word_values(stripped, language);
  if (words.size() == 1) {
    return ParsedScore{*words.begin(), ExtractionRule::kDigitWord,
                       Confidence::kLow};
  }
  if (words.size() > 1) {
    return {ParseFailure::kAmbiguous, "conflicting numeral words: " + join(words)};
  }
  return {ParseFailure::kUnparsable, "no score found"};
}

std::string canonical_response(int score, Language language) {
  return (language == Language::kEnglish ? "Your score: " : "您的分数是：") +
         std::to_string(score);
}

}  // namespace vsmalign
