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

#include "cfaug/annotate.h"

#include <algorithm>
#include <fstream>

#include "cfaug/text.h"
#include "cfaug/utf8.h"

namespace cfaug {
namespace {

bool IsApostrophe(char32_t c) { return c == U'\'' || c == 0x2019; }
bool IsJoiner(char32_t c) { return c == U'-' || IsApostrophe(c); }

bool IsAsciiLetter(char32_t c) {
  return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z');
}

// Length of a dotted initialism ("U.S.", "e.g.") starting at i, or 0.
std::size_t InitialismLength(const std::u32string& t, std::size_t i) {
  std::size_t j = i;
  int groups = 0;
  while (j + 1 < t.size() && IsAsciiLetter(t[j]) && t[j + 1] == U'.') {
    j += 2;
    ++groups;
  }
  if (groups < 2) return 0;
  if (j < t.size() && text::IsWordChar(t[j])) return 0;
  return j - i;
}

bool IsPossessiveAt(const std::u32string& t, std::size_t i) {
  return i + 1 < t.size() && IsApostrophe(t[i]) &&
         (t[i + 1] == U's' || t[i + 1] == U'S') &&
         (i + 2 >= t.size() || !text::IsWordChar(t[i + 2]));
}

TokenSpan MakeSpan(const std::u32string& t, std::size_t b, std::size_t e) {
  return TokenSpan{b, e, utf8::Encode(std::u32string_view(t).substr(b, e - b))};
}

bool IsSentenceEnd(const TokenSpan& tok) {
  return tok.text == "." || tok.text == "!" || tok.text == "?";
}

bool IsCapitalized(const TokenSpan& tok) {
  const std::u32string cps = utf8::Decode(tok.text);
  return !cps.empty() && text::IsUpper(cps.front()) &&
         !text::IsStopword(text::AsciiLower(tok.text));
}

bool StartsWithDigit(const TokenSpan& tok) {
  return !tok.text.empty() && text::IsDigit(static_cast<unsigned char>(tok.text[0]));
}

bool StartsWithWordChar(const TokenSpan& tok) {
  const std::u32string cps = utf8::Decode(tok.text);
  return !cps.empty() && text::IsWordChar(cps.front());
}

std::string_view LookupCategory(const Gazetteers& gazetteers,
                                const std::string& term) {
  for (const auto& [category, terms] : gazetteers) {
    if (terms.contains(term)) return category;
  }
  return {};
}

bool HasUpper(std::string_view s) {
  for (char32_t c : utf8::Decode(s)) {
    if (text::IsUpper(c)) return true;
  }
  return false;
}

bool HasLetter(std::string_view s) {
  for (char32_t c : utf8::Decode(s)) {
    if (text::IsWordChar(c) && !text::IsDigit(c)) return true;
  }
  return false;
}

bool OverlapsAny(const TokenSpan& t, const std::vector<EntityMention>& mentions) {
  return std::any_of(mentions.begin(), mentions.end(), [&](const EntityMention& m) {
    return t.start < m.end && m.start < t.end;
  });
}

}  // namespace

Gazetteers LoadGazetteers(
    const std::map<std::string, std::filesystem::path>& files) {
  Gazetteers out;
  for (const auto& [category, path] : files) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open gazetteer " + path.string());
    auto& terms = out[category];
    std::string line;
    while (std::getline(in, line)) {
      const auto b = line.find_first_not_of(" \t\r");
      if (b == std::string::npos || line[b] == '#') continue;
      const auto e = line.find_last_not_of(" \t\r");
      terms.insert(line.substr(b, e - b + 1));
    }
  }
  return out;
}

std::vector<TokenSpan> Tokenize(std::string_view input) {
  const std::u32string t = utf8::Decode(input);
  std::vector<TokenSpan> out;
  std::size_t i = 0;
  while (i < t.size()) {
    const char32_t c = t[i];
    if (text::IsSpace(c)) {
      ++i;
      continue;
    }
    if (IsPossessiveAt(t, i)) {
      out.push_back(MakeSpan(t, i, i + 2));
      i += 2;
      continue;
    }
    if (!text::IsWordChar(c)) {
      out.push_back(MakeSpan(t, i, i + 1));
      ++i;
      continue;
    }
    if (std::size_t n = InitialismLength(t, i); n > 0) {
      out.push_back(MakeSpan(t, i, i + n));
      i += n;
      continue;
    }
    std::size_t j = i + 1;
    while (j < t.size()) {
      if (text::IsWordChar(t[j])) {
        ++j;
      } else if (IsPossessiveAt(t, j)) {
        break;
      } else if (IsJoiner(t[j]) && j + 1 < t.size() &&
                 text::IsWordChar(t[j + 1])) {
        j += 2;
      } else if ((t[j] == U',' || t[j] == U'.') && text::IsDigit(t[j - 1]) &&
                 j + 1 < t.size() && text::IsDigit(t[j + 1])) {
        j += 2;
      } else {
        break;
      }
    }
    if (j < t.size() && t[j] == U'.') {
      const std::string with_period =
          utf8::Encode(std::u32string_view(t).substr(i, j + 1 - i));
      if (text::IsAbbreviation(with_period)) ++j;
    }
    out.push_back(MakeSpan(t, i, j));
    i = j;
  }
  return out;
}

std::vector<EntityMention> HeuristicEntities(std::string_view input,
                                             const Gazetteers& gazetteers) {
  const std::vector<TokenSpan> tokens = Tokenize(input);
  const utf8::CharIndex index(input);

  // A word token is sentence-initial when no word token precedes it in the
  // current sentence.
  std::vector<bool> initial(tokens.size(), false);
  bool at_start = true;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (IsSentenceEnd(tokens[i])) {
      at_start = true;
    } else if (StartsWithWordChar(tokens[i])) {
      initial[i] = at_start;
      at_start = false;
    }
  }

  std::vector<EntityMention> out;
  auto emit = [&](std::size_t first, std::size_t last, std::string category) {
    EntityMention m;
    m.start = tokens[first].start;
    m.end = tokens[last].end;
    m.text = std::string(index.Slice(m.start, m.end));
    m.category = std::move(category);
    out.push_back(std::move(m));
  };

  std::size_t i = 0;
  while (i < tokens.size()) {
    if (StartsWithDigit(tokens[i])) {
      emit(i, i, "CARDINAL");
      ++i;
      continue;
    }
    if (!IsCapitalized(tokens[i])) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < tokens.size() && IsCapitalized(tokens[j])) ++j;
    std::size_t first = i;
    const std::string whole(index.Slice(tokens[i].start, tokens[j - 1].end));
    std::string_view category = LookupCategory(gazetteers, whole);
    if (initial[i] && category.empty()) {
      ++first;
      if (first < j) {
        const std::string rest(index.Slice(tokens[first].start, tokens[j - 1].end));
        category = LookupCategory(gazetteers, rest);
      }
    }
    if (first < j) emit(first, j - 1, category.empty() ? "MISC" : std::string(category));
    i = j;
  }
  return out;
}

std::vector<TokenSpan> SelectNouns(const Sample& s, const SynsetGraph& g) {
  std::vector<TokenSpan> out;
  if (s.summary_noun_tokens) {
    for (const auto& t : *s.summary_noun_tokens) {
      if (g.IsNoun(text::AsciiLower(t.text)) && !OverlapsAny(t, s.summary_entities)) {
        out.push_back(t);
      }
    }
    return out;
  }
  for (auto& t : Tokenize(s.summary)) {
    if (!HasLetter(t.text) || HasUpper(t.text)) continue;
    if (text::IsStopword(t.text)) continue;
    if (OverlapsAny(t, s.summary_entities)) continue;
    if (!g.IsNoun(t.text)) continue;
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace cfaug
