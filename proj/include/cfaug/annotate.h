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

#ifndef CFAUG_ANNOTATE_H_
#define CFAUG_ANNOTATE_H_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "cfaug/corpus.h"
#include "cfaug/wordnet.h"

namespace cfaug {

// Category -> known surface forms. std::map keeps lookups in a fixed
// category order when a term is listed under several categories.
using Gazetteers = std::map<std::string, std::unordered_set<std::string>>;

// Reads one term per line for each category file. Blank lines and lines
// starting with '#' are ignored.
Gazetteers LoadGazetteers(const std::map<std::string, std::filesystem::path>& files);

// Whitespace-and-punctuation tokenizer with character offsets.
//
//  - Words are runs of letters/digits; a hyphen or apostrophe between two
//    word characters stays inside the word ("long-term", "don't").
//  - Digit groups keep their separators: "150,000", "3.5".
//  - A trailing possessive is its own token: "driver's" -> "driver", "'s".
//  - Dotted initialisms and listed abbreviations keep their final period:
//    "U.S. bus" -> "U.S.", "bus"; "Mr. Smith" -> "Mr.", "Smith".
//  - Every other non-space character is a one-character token.
std::vector<TokenSpan> Tokenize(std::string_view text);

// Fallback entity tagger. Maximal runs of capitalized, non-stopword tokens
// become mentions; a run's sentence-initial token is dropped unless the
// whole run is a gazetteer hit. Category is the first gazetteer listing
// the run's exact text, else "MISC". Tokens starting with a digit are
// single-token CARDINAL mentions.
std::vector<EntityMention> HeuristicEntities(std::string_view text,
                                             const Gazetteers& gazetteers);

// Summary tokens eligible for hypernym substitution.
//
// With pre-annotated noun tokens: those whose lowercased text is in the
// noun index. Otherwise: tokens that are in the noun index, contain a
// letter, have no uppercase letters and are not stopwords. In both cases
// tokens overlapping a summary entity are excluded.
std::vector<TokenSpan> SelectNouns(const Sample& s, const SynsetGraph& g);

}  // namespace cfaug

#endif  // CFAUG_ANNOTATE_H_
