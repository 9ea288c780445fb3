// Copyright 2026 The cfaug Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cfaug/text.h"

#include <algorithm>
#include <iterator>
#include <string_view>
#include <unordered_set>

namespace cfaug::text {
namespace {

constexpr std::string_view kStopwords[] = {
    "a",        "about",   "above",   "after",   "again",   "against",
    "all",      "am",      "an",      "and",     "any",     "are",
    "as",       "at",      "be",      "because", "been",    "before",
    "being",    "below",   "between", "both",    "but",     "by",
    "can",      "could",   "did",     "do",      "does",    "doing",
    "down",     "during",  "each",    "few",     "for",     "from",
    "further",  "had",     "has",     "have",    "having",  "he",
    "her",      "here",    "hers",    "herself", "him",     "himself",
    "his",      "how",     "i",       "if",      "in",      "into",
    "is",       "it",      "its",     "itself",  "just",    "me",
    "might",    "more",    "most",    "must",    "my",      "myself",
    "no",       "nor",     "not",     "now",     "of",      "off",
    "on",       "once",    "only",    "or",      "other",   "our",
    "ours",     "ourselves", "out",   "over",    "own",     "same",
    "shall",    "she",     "should",  "so",      "some",    "such",
    "than",     "that",    "the",     "their",   "theirs",  "them",
    "themselves", "then",  "there",   "these",   "they",    "this",
    "those",    "through", "to",      "too",     "under",   "until",
    "up",       "upon",    "us",      "very",    "was",     "we",
    "were",     "what",    "when",    "where",   "which",   "while",
    "who",      "whom",    "whose",   "why",     "will",    "with",
    "within",   "without", "would",   "you",     "your",    "yours",
    "yourself", "yourselves", "also", "although", "among",  "another",
    "around",   "cannot",  "either",  "ever",    "every",   "however",
    "many",     "may",     "much",    "neither", "s",       "t",
    "onto",     "per",
};

constexpr std::string_view kAbbreviations[] = {
    "Mr.",   "Mrs.",  "Ms.",   "Dr.",   "Prof.", "Sr.",   "Jr.",  "St.",
    "Mt.",   "Gen.",  "Gov.",  "Sen.",  "Rep.",  "Col.",  "Lt.",  "Capt.",
    "Sgt.",  "Rev.",  "Hon.",  "Inc.",  "Ltd.",  "Corp.", "Co.",  "No.",
    "vs.",   "etc.",  "approx.", "Jan.", "Feb.", "Mar.",  "Apr.", "Jun.",
    "Jul.",  "Aug.",  "Sep.",  "Sept.", "Oct.",  "Nov.",  "Dec.", "Ave.",
    "Blvd.", "Rd.",   "Fig.",  "al.",   "cf.",
};

const std::unordered_set<std::string_view>& StopwordSet() {
  static const std::unordered_set<std::string_view> set(std::begin(kStopwords),
                                                        std::end(kStopwords));
  return set;
}

bool InPunctuationBlock(char32_t c) {
  return (c >= 0x00A0 && c <= 0x00BF) || c == 0x00D7 || c == 0x00F7 ||
         (c >= 0x2000 && c <= 0x206F) || (c >= 0x2190 && c <= 0x2BFF) ||
         (c >= 0x3000 && c <= 0x303F) || (c >= 0xFE30 && c <= 0xFE4F) ||
         (c >= 0xFF00 && c <= 0xFF0F);
}

char AsciiLowerChar(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

}  // namespace

bool IsDigit(char32_t c) { return c >= U'0' && c <= U'9'; }

bool IsUpper(char32_t c) {
  return (c >= U'A' && c <= U'Z') ||
         (c >= 0x00C0 && c <= 0x00DE && c != 0x00D7);
}

bool IsLower(char32_t c) {
  return (c >= U'a' && c <= U'z') ||
         (c >= 0x00DF && c <= 0x00FF && c != 0x00F7);
}

bool IsSpace(char32_t c) {
  return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\f' ||
         c == U'\v' || c == 0x00A0 || (c >= 0x2000 && c <= 0x200B) ||
         c == 0x2028 || c == 0x2029 || c == 0x3000;
}

bool IsWordChar(char32_t c) {
  if (c < 0x80) {
    return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z') || IsDigit(c);
  }
  return !InPunctuationBlock(c) && !IsSpace(c);
}

std::string AsciiLower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), AsciiLowerChar);
  return out;
}

bool ContainsIgnoreCase(std::string_view haystack, std::string_view needle) {
  if (needle.empty()) return true;
  auto it = std::search(haystack.begin(), haystack.end(), needle.begin(),
                        needle.end(), [](char a, char b) {
                          return AsciiLowerChar(a) == AsciiLowerChar(b);
                        });
  return it != haystack.end();
}

bool IsAbbreviation(std::string_view token) {
  if (std::find(std::begin(kAbbreviations), std::end(kAbbreviations), token) !=
      std::end(kAbbreviations)) {
    return true;
  }
  // Dotted initialisms: two or more "X." groups of one ASCII letter each.
  if (token.size() < 4 || token.size() % 2 != 0) return false;
  for (std::size_t i = 0; i < token.size(); i += 2) {
    const char c = token[i];
    const bool letter = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
    if (!letter || token[i + 1] != '.') return false;
  }
  return true;
}

bool IsStopword(std::string_view lowered) {
  return StopwordSet().contains(lowered);
}

std::size_t StopwordCount() { return StopwordSet().size(); }

}  // namespace cfaug::text
