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

#ifndef CFAUG_CORPUS_H_
#define CFAUG_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "json.hpp"

namespace cfaug {

// Character offsets [start, end) into a host text.
struct TokenSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  std::string text;

  bool operator==(const TokenSpan&) const = default;
};

struct EntityMention {
  std::size_t start = 0;
  std::size_t end = 0;
  std::string text;
  std::string category;

  bool operator==(const EntityMention&) const = default;
};

struct Sample {
  std::string id;
  std::string document;
  std::string summary;
  std::vector<EntityMention> document_entities;
  std::vector<EntityMention> summary_entities;
  std::optional<std::vector<TokenSpan>> summary_noun_tokens;
  // Unknown input keys, kept so a cleaned corpus can be written back out.
  nlohmann::json extra = nlohmann::json::object();
};

enum class Transform { kOriginal, kEntityReplace, kCategoricalEntityReplace, kHypernymReplace };

std::string_view TransformName(Transform t);
std::optional<Transform> ParseTransform(std::string_view name);

// One substitution made in a target summary. `start` is the character
// offset of `replacement` in the final target.
struct Provenance {
  std::string original;
  std::string replacement;
  std::size_t start = 0;

  bool operator==(const Provenance&) const = default;
};

struct AugmentedPair {
  std::string id;
  std::string input;
  std::string target;
  Transform transform = Transform::kOriginal;
  std::vector<Provenance> provenance;

  bool operator==(const AugmentedPair&) const = default;
};

// A record that is valid JSON but does not follow the schema.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A rejected corpus line, with its 1-based line number.
class CorpusError : public std::runtime_error {
 public:
  CorpusError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Empty iff every invariant of Sample and its mentions holds. Messages name
// the field and the broken rule, e.g. "summary_entities[0]: text/span mismatch".
std::vector<std::string> ValidateSample(const Sample& s);

// Parses one JSONL record. Throws nlohmann::json::exception on bad JSON or
// SchemaError on missing/mistyped fields; does not run ValidateSample.
Sample ParseSample(std::string_view line);

nlohmann::ordered_json SampleToJson(const Sample& s);
std::string SerializeSample(const Sample& s);

nlohmann::ordered_json PairToJson(const AugmentedPair& p);
std::string SerializePair(const AugmentedPair& p);
AugmentedPair ParsePair(std::string_view line);

struct ReadStats {
  std::size_t lines = 0;
  std::size_t accepted = 0;
  std::size_t skipped = 0;
  std::vector<std::string> errors;  // "line N: ..." for each skipped line
};

// Streams Samples from a JSONL file in file order. Strict mode throws
// CorpusError on the first bad line; otherwise bad lines are counted in
// stats() and skipped. Blank lines are ignored.
class CorpusReader {
 public:
  CorpusReader(const std::filesystem::path& path, bool strict);

  std::optional<Sample> Next();
  const ReadStats& stats() const { return stats_; }

 private:
  void Reject(std::size_t line, const std::string& what);

  std::ifstream in_;
  bool strict_;
  std::size_t line_no_ = 0;
  std::unordered_set<std::string> seen_ids_;
  ReadStats stats_;
};

std::vector<Sample> ReadCorpus(const std::filesystem::path& path, bool strict,
                               ReadStats* stats = nullptr);

// Writes one JSON object per line with a fixed key order. Returns the
// number of lines written; throws std::runtime_error on I/O failure.
std::size_t WritePairs(const std::vector<AugmentedPair>& pairs,
                       const std::filesystem::path& path);
std::vector<AugmentedPair> ReadPairs(const std::filesystem::path& path);

std::size_t WriteCorpus(const std::vector<Sample>& samples,
                        const std::filesystem::path& path);

// Line-oriented sink used by the streaming pipelines.
class JsonlWriter {
 public:
  explicit JsonlWriter(const std::filesystem::path& path);
  void Write(std::string_view line);
  std::size_t count() const { return count_; }
  void Close();

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t count_ = 0;
};

}  // namespace cfaug

#endif  // CFAUG_CORPUS_H_
