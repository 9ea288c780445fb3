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

#ifndef CFAUG_WORDNET_H_
#define CFAUG_WORDNET_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cfaug {

// Byte offset of a synset record in data.noun; WNDB uses it as the id.
struct SynsetOffset {
  std::uint32_t value = 0;

  auto operator<=>(const SynsetOffset&) const = default;
};

struct SynsetOffsetHash {
  std::size_t operator()(SynsetOffset o) const noexcept { return o.value; }
};

struct Synset {
  // Surface lemmas in file order, underscores replaced by spaces.
  std::vector<std::string> lemmas;
  // Targets of `@` and `@i` pointers, in file order.
  std::vector<SynsetOffset> hypernyms;
};

class WordNetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The WordNet noun database: synsets, the lemma index and the hypernym DAG.
// Immutable after loading.
class SynsetGraph {
 public:
  // Parses WNDB `index.noun` and `data.noun`. Header lines beginning with
  // two spaces are skipped. Throws WordNetError naming the file and line of
  // an unparseable record, a dangling pointer, an index/data mismatch, or a
  // hypernym cycle.
  static SynsetGraph Load(const std::filesystem::path& index_path,
                          const std::filesystem::path& data_path);

  // Loads `dir/index.noun` and `dir/data.noun`.
  static SynsetGraph LoadDirectory(const std::filesystem::path& dir);

  // Same as Load, from in-memory file contents (used for fixtures).
  static SynsetGraph Parse(std::string_view index_text,
                           std::string_view data_text);

  const Synset* Find(SynsetOffset offset) const;

  // Sense-ordered synsets for a lemma, or nullptr. The lookup key is
  // lowercased with underscores mapped to spaces.
  const std::vector<SynsetOffset>* Senses(std::string_view lemma) const;

  // First sense, first hypernym pointer, first lemma of that synset.
  // Empty for unknown lemmas and for synsets without hypernyms.
  std::optional<std::string> HypernymOf(std::string_view lemma) const;

  bool IsNoun(std::string_view token) const;

  // Synsets ordered so that every synset precedes all of its hypernyms.
  // Throws WordNetError if the hypernym relation has a cycle.
  std::vector<SynsetOffset> TopologicalOrder() const;

  std::size_t synset_count() const { return synsets_.size(); }
  std::size_t lemma_count() const { return lemma_index_.size(); }

  static std::string NormalizeLemma(std::string_view lemma);

 private:
  std::unordered_map<SynsetOffset, Synset, SynsetOffsetHash> synsets_;
  std::unordered_map<std::string, std::vector<SynsetOffset>> lemma_index_;
};

}  // namespace cfaug

#endif  // CFAUG_WORDNET_H_
