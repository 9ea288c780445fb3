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

#ifndef CFAUG_PERTURB_H_
#define CFAUG_PERTURB_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "cfaug/corpus.h"
#include "cfaug/wordnet.h"
#include "json.hpp"

namespace cfaug {

// Entity inventory of a corpus split, deduplicated on (text, category) and
// kept in first-occurrence order.
struct EntityIndex {
  std::map<std::string, std::vector<std::string>> by_category;
  std::vector<std::pair<std::string, std::string>> all;  // (text, category)
  std::string source;

  bool empty() const { return all.empty(); }
  bool operator==(const EntityIndex&) const = default;
};

class EntityIndexBuilder {
 public:
  explicit EntityIndexBuilder(std::string source) { index_.source = std::move(source); }
  // Document mentions first, then summary mentions.
  void Add(const Sample& s);
  void AddEntity(const std::string& text, const std::string& category);
  EntityIndex Finish() &&;

 private:

  EntityIndex index_;
  std::unordered_set<std::string> seen_;
};

EntityIndex BuildEntityIndex(std::span<const Sample> corpus, std::string source);

nlohmann::ordered_json EntityIndexToJson(const EntityIndex& idx);
EntityIndex EntityIndexFromJson(const nlohmann::json& j);

enum class Strategy { kEntityReplace, kCategoricalEntityReplace, kHypernymReplace };

std::string_view StrategyName(Strategy s);  // "er", "cat-er", "wn-hyper"
std::optional<Strategy> ParseStrategy(std::string_view name);
Transform StrategyTransform(Strategy s);

struct ControlCodes {
  std::string original = "generate a summary";
  std::string wrong = "generate a wrong summary";
  std::string general = "generate a general summary";
};

struct AugmentConfig {
  Strategy strategy = Strategy::kEntityReplace;
  std::uint64_t seed = 42;
  double noun_fraction = 0.3;
  int entities_per_summary = 1;
  ControlCodes control_codes;

  // Throws std::invalid_argument when a field is out of range.
  void Validate() const;
  nlohmann::ordered_json ToJson() const;
};

// "<code>: <document>"
std::string WithControlCode(std::string_view code, std::string_view document);

enum class SkipReason {
  kNoEntities,             // summary has no entity mentions
  kNoEligibleReplacement,  // every candidate occurs in the document
  kNoNouns,                // no summary token is a WordNet noun
  kNoneSelected,           // noun_fraction selected zero nouns
  kNoHypernym,             // no selected noun has a hypernym
};

std::string_view SkipReasonName(SkipReason r);

using TransformOutcome = std::variant<AugmentedPair, SkipReason>;

// Stable across platforms and runs: derived only from the run seed and the
// sample id.
std::uint64_t SampleSeed(std::uint64_t run_seed, std::string_view sample_id);

// Portable sampling on top of mt19937_64. The standard distributions are
// implementation-defined, so bounded draws use rejection on raw output.
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, n); n must be positive.
  std::size_t Below(std::size_t n);

  // k distinct indices from [0, n), uniformly, in draw order.
  std::vector<std::size_t> Choose(std::size_t n, std::size_t k);

 private:
  std::mt19937_64 engine_;
};

TransformOutcome EntityReplace(const Sample& s, const EntityIndex& idx,
                               const AugmentConfig& cfg, std::uint64_t sample_seed);
TransformOutcome CategoricalEntityReplace(const Sample& s, const EntityIndex& idx,
                                          const AugmentConfig& cfg,
                                          std::uint64_t sample_seed);
TransformOutcome HypernymReplace(const Sample& s, const SynsetGraph& g,
                                 const AugmentConfig& cfg, std::uint64_t sample_seed);

// ceil(fraction * n), ignoring floating-point noise below 1e-9.
std::size_t NounQuota(double fraction, std::size_t n);

AugmentedPair OriginalPair(const Sample& s, const ControlCodes& codes);

struct SampleOutput {
  AugmentedPair original;
  TransformOutcome transformed;
};

// Applies one configured strategy. Holds non-owning pointers to the entity
// index and/or graph, which must outlive it.
class Augmenter {
 public:
  // Throws std::invalid_argument if the strategy's resource is missing or
  // the config is out of range.
  Augmenter(AugmentConfig cfg, const EntityIndex* index, const SynsetGraph* graph);

  SampleOutput Process(const Sample& s) const;
  const AugmentConfig& config() const { return cfg_; }

 private:
  AugmentConfig cfg_;
  const EntityIndex* index_;
  const SynsetGraph* graph_;
};

struct SkipReport {
  std::size_t samples = 0;
  std::size_t originals = 0;
  std::size_t transformed = 0;
  std::map<std::string, std::size_t> skips;

  std::size_t total_skips() const;
  void Record(const SampleOutput& out);
  nlohmann::ordered_json ToJson(const AugmentConfig& cfg) const;
};

using SampleSource = std::function<std::optional<Sample>()>;
using PairSink = std::function<void(const AugmentedPair&)>;

// Pulls samples in batches, transforms each batch on `workers` threads and
// emits pairs in input order: each sample's ORIGINAL pair, then its
// transformed pair when the strategy applied.
SkipReport AugmentStream(const SampleSource& source, const Augmenter& augmenter,
                         int workers, const PairSink& sink,
                         std::size_t batch_size = 1024);

std::vector<AugmentedPair> AugmentCorpus(std::span<const Sample> corpus,
                                         const Augmenter& augmenter, int workers,
                                         SkipReport* report = nullptr);

}  // namespace cfaug

#endif  // CFAUG_PERTURB_H_
