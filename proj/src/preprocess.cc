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

#include "cfaug/preprocess.h"

#include <algorithm>
#include <stdexcept>

#include "cfaug/text.h"
#include "cfaug/utf8.h"

namespace cfaug {
namespace {

bool IsTerminal(char32_t c) { return c == U'.' || c == U'?' || c == U'!'; }

bool IsClosing(char32_t c) {
  return c == U'"' || c == U'\'' || c == U')' || c == U']' || c == 0x201D ||
         c == 0x2019;
}

bool IsOpening(char32_t c) {
  return c == U'"' || c == U'\'' || c == U'(' || c == U'[' || c == 0x201C ||
         c == 0x2018;
}

// The whitespace-delimited word ending at `period`, with leading opening
// punctuation removed.
std::string WordBefore(const std::u32string& t, std::size_t period) {
  std::size_t b = period;
  while (b > 0 && !text::IsSpace(t[b - 1])) --b;
  while (b < period && IsOpening(t[b])) ++b;
  return utf8::Encode(std::u32string_view(t).substr(b, period + 1 - b));
}

bool SuppressedByAbbreviation(const std::u32string& t, std::size_t period) {
  const std::string word = WordBefore(t, period);
  if (text::IsAbbreviation(word)) return true;
  // Single-letter initial, as in "J. Smith".
  const std::u32string cps = utf8::Decode(word);
  return cps.size() == 2 && text::IsUpper(cps[0]);
}

TokenSpan Trimmed(const std::u32string& t, std::size_t b, std::size_t e) {
  while (b < e && text::IsSpace(t[b])) ++b;
  while (e > b && text::IsSpace(t[e - 1])) --e;
  return TokenSpan{b, e, utf8::Encode(std::u32string_view(t).substr(b, e - b))};
}

// Character ranges to cut for each removed sentence: from its start to the
// next sentence's start, or back to the last kept sentence's end when only
// removed sentences follow. Overlapping ranges are merged.
std::vector<std::pair<std::size_t, std::size_t>> CutRanges(
    const std::vector<TokenSpan>& sentences, const std::vector<bool>& removed,
    std::size_t length) {
  std::size_t tail = sentences.size();
  while (tail > 0 && removed[tail - 1]) --tail;
  std::vector<std::pair<std::size_t, std::size_t>> cuts;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    if (!removed[i]) continue;
    std::size_t b = sentences[i].start;
    std::size_t e = i + 1 < sentences.size() ? sentences[i + 1].start : length;
    if (i >= tail) b = tail > 0 ? sentences[tail - 1].end : 0;
    if (!cuts.empty() && b <= cuts.back().second) {
      cuts.back().second = std::max(cuts.back().second, e);
      cuts.back().first = std::min(cuts.back().first, b);
    } else {
      cuts.emplace_back(b, e);
    }
  }
  return cuts;
}

std::string ApplyCuts(std::string_view text,
                      const std::vector<std::pair<std::size_t, std::size_t>>& cuts) {
  const utf8::CharIndex index(text);
  std::string out;
  std::size_t cursor = 0;
  for (const auto& [b, e] : cuts) {
    out.append(index.Slice(cursor, b));
    cursor = e;
  }
  out.append(index.Slice(cursor, index.chars()));
  return out;
}

// Shifts spans left past the cuts; spans touching a cut are dropped.
template <typename Span>
std::vector<Span> RemapSpans(const std::vector<Span>& spans,
                             const std::vector<std::pair<std::size_t, std::size_t>>& cuts) {
  std::vector<Span> out;
  for (const Span& sp : spans) {
    std::size_t shift = 0;
    bool dropped = false;
    for (const auto& [b, e] : cuts) {
      if (sp.start < e && b < sp.end) {
        dropped = true;
        break;
      }
      if (e <= sp.start) shift += e - b;
    }
    if (dropped) continue;
    Span moved = sp;
    moved.start -= shift;
    moved.end -= shift;
    out.push_back(std::move(moved));
  }
  return out;
}

bool IsBlank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
  });
}

}  // namespace

std::vector<TokenSpan> SplitSentences(std::string_view input) {
  const std::u32string t = utf8::Decode(input);
  std::vector<TokenSpan> out;
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < t.size()) {
    if (!IsTerminal(t[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < t.size() && (IsTerminal(t[j]) || IsClosing(t[j]))) ++j;
    bool boundary = false;
    if (j == t.size()) {
      boundary = true;
    } else if (text::IsSpace(t[j])) {
      std::size_t k = j;
      while (k < t.size() && text::IsSpace(t[k])) ++k;
      boundary = k == t.size() || text::IsUpper(t[k]) || text::IsDigit(t[k]) ||
                 IsOpening(t[k]);
    }
    // Only a lone period can be an abbreviation; "?" and "!" always end.
    if (boundary && t[i] == U'.' && j == i + 1 && SuppressedByAbbreviation(t, i)) {
      boundary = false;
    }
    if (boundary) {
      TokenSpan span = Trimmed(t, start, j);
      if (span.start < span.end) out.push_back(std::move(span));
      start = j;
    }
    i = j;
  }
  TokenSpan tail = Trimmed(t, start, t.size());
  if (tail.start < tail.end) out.push_back(std::move(tail));
  return out;
}

BoilerplatePattern::BoilerplatePattern(std::string spec, bool case_sensitive)
    : spec_(std::move(spec)), case_sensitive_(case_sensitive) {
  if (spec_.starts_with("re:")) {
    is_regex_ = true;
    auto flags = std::regex::ECMAScript;
    if (!case_sensitive_) flags |= std::regex::icase;
    try {
      regex_ = std::regex(spec_.substr(3), flags);
    } catch (const std::regex_error& e) {
      throw std::invalid_argument("bad boilerplate regex \"" + spec_ + "\": " + e.what());
    }
  } else {
    if (spec_.empty()) throw std::invalid_argument("empty boilerplate pattern");
    literal_ = case_sensitive_ ? spec_ : text::AsciiLower(spec_);
  }
}

std::string BoilerplatePattern::Erase(std::string_view sentence) const {
  if (is_regex_) {
    return std::regex_replace(std::string(sentence), regex_, "");
  }
  std::string s(sentence);
  const std::string haystack = case_sensitive_ ? s : text::AsciiLower(s);
  std::string out;
  std::size_t cursor = 0;
  for (std::size_t pos = haystack.find(literal_); pos != std::string::npos;
       pos = haystack.find(literal_, pos + literal_.size())) {
    out.append(s, cursor, pos - cursor);
    cursor = pos + literal_.size();
  }
  out.append(s, cursor);
  return out;
}

bool IsBoilerplate(std::string_view sentence,
                   const std::vector<BoilerplatePattern>& patterns) {
  std::string rest(sentence);
  bool erased = false;
  for (const auto& p : patterns) {
    std::string next = p.Erase(rest);
    erased |= next != rest;
    rest = std::move(next);
  }
  if (!erased) return false;
  for (char32_t c : utf8::Decode(rest)) {
    if (text::IsWordChar(c)) return false;
  }
  return true;
}

std::vector<std::string> DefaultBoilerplatePatterns() {
  return {
      "Share this with Email, Facebook, Messenger",
      "re:\\b(share( this)?( with| on)?|email|facebook|messenger|twitter|pinterest|"
      "whatsapp|linkedin|copy this link|these are external links and will "
      "open in a new window)\\b",
  };
}

void FilterConfig::Validate() const {
  if (strip_boilerplate && boilerplate_patterns.empty()) {
    throw std::invalid_argument("boilerplate removal is on but no patterns are configured");
  }
  for (const auto& spec : boilerplate_patterns) BoilerplatePattern(spec, case_sensitive);
}

nlohmann::ordered_json FilterConfig::ToJson() const {
  nlohmann::ordered_json j;
  j["strip_boilerplate"] = strip_boilerplate;
  j["boilerplate_patterns"] = boilerplate_patterns;
  j["entity_filter"] = entity_filter;
  j["case_sensitive"] = case_sensitive;
  return j;
}

Preprocessor::Preprocessor(FilterConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.Validate();
  if (cfg_.strip_boilerplate) {
    for (const auto& spec : cfg_.boilerplate_patterns) {
      patterns_.emplace_back(spec, cfg_.case_sensitive);
    }
  }
}

StripResult Preprocessor::Strip(const Sample& s) const {
  StripResult result{s, {}, false};
  if (patterns_.empty()) return result;
  const std::vector<TokenSpan> sentences = SplitSentences(s.document);
  std::vector<bool> removed(sentences.size(), false);
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    if (IsBoilerplate(sentences[i].text, patterns_)) {
      removed[i] = true;
      result.removed_sentences.push_back(sentences[i].text);
    }
  }
  if (result.removed_sentences.empty()) return result;
  const auto cuts = CutRanges(sentences, removed, utf8::Length(s.document));
  result.sample.document = ApplyCuts(s.document, cuts);
  result.sample.document_entities = RemapSpans(s.document_entities, cuts);
  result.emptied = IsBlank(result.sample.document);
  return result;
}

FilterDecision Preprocessor::Filter(const Sample& s) const {
  FilterDecision d{true, s, {}, {}};
  if (!cfg_.entity_filter) return d;
  const std::vector<TokenSpan> sentences = SplitSentences(s.summary);
  std::vector<bool> removed(sentences.size(), false);
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    std::vector<std::string> unsupported;
    for (const auto& m : s.summary_entities) {
      if (m.start >= sentences[i].end || m.end <= sentences[i].start) continue;
      const bool present = cfg_.case_sensitive
                               ? s.document.find(m.text) != std::string::npos
                               : text::ContainsIgnoreCase(s.document, m.text);
      if (!present &&
          std::find(unsupported.begin(), unsupported.end(), m.text) == unsupported.end()) {
        unsupported.push_back(m.text);
      }
    }
    if (unsupported.empty()) continue;
    removed[i] = true;
    std::string reason = "unsupported entity: ";
    for (std::size_t k = 0; k < unsupported.size(); ++k) {
      reason += (k ? ", " : "") + unsupported[k];
    }
    d.removed_sentences.push_back(sentences[i].text);
    d.reasons.push_back(std::move(reason));
  }
  if (d.removed_sentences.empty()) return d;
  const auto cuts = CutRanges(sentences, removed, utf8::Length(s.summary));
  d.sample.summary = ApplyCuts(s.summary, cuts);
  d.sample.summary_entities = RemapSpans(s.summary_entities, cuts);
  if (s.summary_noun_tokens) {
    d.sample.summary_noun_tokens = RemapSpans(*s.summary_noun_tokens, cuts);
  }
  if (IsBlank(d.sample.summary)) d.keep = false;
  return d;
}

std::optional<Sample> Preprocessor::Run(const Sample& s, DropReport& report) const {
  ++report.input_samples;
  auto item = [&](std::string_view kind, const std::string& sentence,
                  const std::string& reason) {
    nlohmann::ordered_json j;
    j["id"] = s.id;
    j["kind"] = kind;
    j["sentence"] = sentence;
    j["reason"] = reason;
    report.items.push_back(std::move(j));
  };

  StripResult stripped = Strip(s);
  for (const auto& sentence : stripped.removed_sentences) {
    ++report.boilerplate_sentences_removed;
    item("boilerplate", sentence, "boilerplate");
  }
  if (IsBlank(stripped.sample.document)) {
    ++report.dropped;
    ++report.empty_document_drops;
    item("dropped", "", "empty document");
    return std::nullopt;
  }

  FilterDecision decision = Filter(stripped.sample);
  for (std::size_t i = 0; i < decision.removed_sentences.size(); ++i) {
    ++report.entity_sentences_removed;
    item("unsupported_entity", decision.removed_sentences[i], decision.reasons[i]);
  }
  if (!decision.keep) {
    ++report.dropped;
    ++report.entity_drops;
    item("dropped", "", "empty summary after entity filter");
    return std::nullopt;
  }
  ++report.kept;
  return std::move(decision.sample);
}

StripResult StripBoilerplate(const Sample& s, const FilterConfig& cfg) {
  return Preprocessor(cfg).Strip(s);
}

FilterDecision EntityFaithfulnessFilter(const Sample& s, const FilterConfig& cfg) {
  return Preprocessor(cfg).Filter(s);
}

void DropReport::Merge(const DropReport& other) {
  input_samples += other.input_samples;
  kept += other.kept;
  dropped += other.dropped;
  boilerplate_sentences_removed += other.boilerplate_sentences_removed;
  entity_sentences_removed += other.entity_sentences_removed;
  entity_drops += other.entity_drops;
  empty_document_drops += other.empty_document_drops;
  for (const auto& item : other.items) items.push_back(item);
}

nlohmann::ordered_json DropReport::ToJson(const FilterConfig& cfg) const {
  nlohmann::ordered_json j;
  j["config"] = cfg.ToJson();
  j["input_samples"] = input_samples;
  j["kept"] = kept;
  j["dropped"] = dropped;
  j["boilerplate_sentences_removed"] = boilerplate_sentences_removed;
  j["entity_sentences_removed"] = entity_sentences_removed;
  j["entity_drops"] = entity_drops;
  j["empty_document_drops"] = empty_document_drops;
  j["items"] = items;
  return j;
}

}  // namespace cfaug
