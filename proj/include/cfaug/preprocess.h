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

#ifndef CFAUG_PREPROCESS_H_
#define CFAUG_PREPROCESS_H_

#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "cfaug/corpus.h"
#include "json.hpp"

namespace cfaug {

// Rule-based sentence splitter. A sentence ends at '.', '?' or '!' (plus
// any closing quotes or brackets) followed by whitespace and then an
// uppercase letter, an opening quote, a digit, or the end of the text. A
// period that closes a listed abbreviation or dotted initialism never ends
// a sentence. Returned spans are trimmed of surrounding whitespace.
std::vector<TokenSpan> SplitSentences(std::string_view text);

// A boilerplate pattern: literal substring, or a regular expression when
// written with the "re:" prefix. A sentence is boilerplate when erasing
// every pattern match from it leaves no letters or digits, i.e. it consists
// only of noise strings and punctuation.
class BoilerplatePattern {
 public:
  // Throws std::invalid_argument for an empty literal or a bad regex.
  BoilerplatePattern(std::string spec, bool case_sensitive);
  std::string Erase(std::string_view sentence) const;
  const std::string& spec() const { return spec_; }

 private:
  std::string spec_;
  std::string literal_;
  bool is_regex_ = false;
  bool case_sensitive_ = false;
  std::regex regex_;
};

// Built-in noise strings: the social-share line and close variants.
std::vector<std::string> DefaultBoilerplatePatterns();

struct FilterConfig {
  bool strip_boilerplate = true;
  std::vector<std::string> boilerplate_patterns = DefaultBoilerplatePatterns();
  bool entity_filter = true;
  bool case_sensitive = false;

  void Validate() const;
  nlohmann::ordered_json ToJson() const;
};

struct StripResult {
  Sample sample;
  std::vector<std::string> removed_sentences;
  // The document was entirely boilerplate; the sample cannot be kept.
  bool emptied = false;
};

bool IsBoilerplate(std::string_view sentence,
                   const std::vector<BoilerplatePattern>& patterns);

// Removes document sentences matching any pattern. Document entities inside
// removed text are dropped, the rest re-spanned. The summary is untouched.
StripResult StripBoilerplate(const Sample& s, const FilterConfig& cfg);

struct FilterDecision {
  bool keep = true;
  Sample sample;  // summary with unsupported sentences removed
  std::vector<std::string> removed_sentences;
  std::vector<std::string> reasons;  // parallel to removed_sentences, plus drop reason
};

// Removes each summary sentence containing an entity whose text does not
// occur in the document (case-insensitive substring unless configured
// otherwise). Drops the sample when the summary becomes empty.
FilterDecision EntityFaithfulnessFilter(const Sample& s, const FilterConfig& cfg);

// Tracks removals and drops across a corpus run.
struct DropReport {
  std::size_t input_samples = 0;
  std::size_t kept = 0;
  std::size_t dropped = 0;
  std::size_t boilerplate_sentences_removed = 0;
  std::size_t entity_sentences_removed = 0;
  std::size_t entity_drops = 0;
  std::size_t empty_document_drops = 0;
  nlohmann::ordered_json items = nlohmann::ordered_json::array();

  void Merge(const DropReport& other);
  nlohmann::ordered_json ToJson(const FilterConfig& cfg) const;
};

// Compiles the patterns of a FilterConfig once for a whole corpus run.
class Preprocessor {
 public:
  explicit Preprocessor(FilterConfig cfg);

  StripResult Strip(const Sample& s) const;
  FilterDecision Filter(const Sample& s) const;

  // Boilerplate stripping, then the entity filter. Returns the cleaned
  // sample, or nullopt if it was dropped; `report` receives the itemized
  // removals.
  std::optional<Sample> Run(const Sample& s, DropReport& report) const;

  const FilterConfig& config() const { return cfg_; }

 private:
  FilterConfig cfg_;
  std::vector<BoilerplatePattern> patterns_;
};

}  // namespace cfaug

#endif  // CFAUG_PREPROCESS_H_
