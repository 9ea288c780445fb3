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

#ifndef CFAUG_METRICS_H_
#define CFAUG_METRICS_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace cfaug {

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// f1 is the harmonic mean, or 0 when precision + recall is 0.
RougeScore MakeRougeScore(double precision, double recall);

// Lowercased maximal runs of letters/digits. No stemming.
std::vector<std::string> RougeTokens(std::string_view text);

// ROUGE-N with reference-clipped n-gram counts. n must be 1 or 2.
RougeScore RougeN(std::string_view candidate, std::string_view reference, int n);
RougeScore RougeL(std::string_view candidate, std::string_view reference);

// Token-level kernels, exposed for exhaustive testing.
std::size_t LcsLength(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);
RougeScore RougeLFromTokens(std::span<const std::uint32_t> candidate,
                            std::span<const std::uint32_t> reference);

enum class EntailmentLabel { kEntailment, kNeutral, kContradiction };

std::string_view EntailmentLabelName(EntailmentLabel l);  // "entailment", ...
std::optional<EntailmentLabel> ParseEntailmentLabel(std::string_view name);

struct EntailmentVerdict {
  EntailmentLabel label = EntailmentLabel::kNeutral;
  std::optional<double> confidence;
};

struct PremiseHypothesis {
  std::string premise;
  std::string hypothesis;
};

class BackendError : public std::runtime_error {
 public:
  explicit BackendError(const std::string& what,
                        std::optional<std::size_t> failed_pair = std::nullopt)
      : std::runtime_error(what), failed_pair_(failed_pair) {}
  // Index of the first pair whose request failed, when known.
  std::optional<std::size_t> failed_pair() const { return failed_pair_; }

 private:
  std::optional<std::size_t> failed_pair_;
};

class EntailmentBackend {
 public:
  virtual ~EntailmentBackend() = default;
  // One verdict per pair, in order. Throws BackendError on failure.
  virtual std::vector<EntailmentVerdict> Classify(
      std::span<const PremiseHypothesis> pairs) = 0;
  virtual std::string name() const = 0;
};

// Deterministic stand-in for an NLI model: ENTAILMENT iff at least
// `threshold` of the hypothesis content tokens (non-stopword, lowercased)
// occur in the premise. An empty hypothesis is vacuously entailed. Never
// returns CONTRADICTION.
class LexicalEntailmentBackend : public EntailmentBackend {
 public:
  explicit LexicalEntailmentBackend(double threshold = 0.9) : threshold_(threshold) {}

  EntailmentVerdict Judge(std::string_view premise, std::string_view hypothesis) const;
  std::vector<EntailmentVerdict> Classify(std::span<const PremiseHypothesis> pairs) override;
  std::string name() const override { return "lexical"; }

 private:
  double threshold_;
};

enum class NliAggregation {
  kStrict,  // 1 iff every summary sentence is entailed
  kMean,    // fraction of entailed sentences
};

std::string_view NliAggregationName(NliAggregation a);
std::optional<NliAggregation> ParseNliAggregation(std::string_view name);

struct NliScore {
  double score = 0.0;
  std::size_t sentences = 0;
  std::size_t entailed = 0;
  bool empty_summary = false;  // scored 0 with a warning
};

// Aggregates per-sentence verdicts into one summary score.
NliScore AggregateVerdicts(std::span<const EntailmentVerdict> verdicts,
                           NliAggregation mode);

// Splits the summary into sentences and asks the backend whether each is
// entailed by the whole document.
NliScore E2eNliScore(std::string_view document, std::string_view summary,
                     EntailmentBackend& backend, NliAggregation mode);

struct EvalItem {
  std::string id;
  std::string document;
  std::string reference;
  std::string prediction;
  std::size_t prediction_entities = 0;
};

struct EvalRow {
  std::string id;
  RougeScore rouge1, rouge2, rougeL;
  double nli_score = 0.0;
  std::size_t nli_sentences = 0;
  bool empty_prediction = false;
};

struct CorpusScores {
  double rouge1 = 0.0, rouge2 = 0.0, rougeL = 0.0;  // mean f1
  double e2e_nli = 0.0;
  double entity_count_mean = 0.0;
  double novel_ngram_ratio = 0.0;
};

struct EvalReport {
  std::vector<EvalRow> per_sample;
  CorpusScores corpus;
  NliAggregation aggregation = NliAggregation::kStrict;
  std::string backend;
  std::vector<std::string> warnings;

  nlohmann::ordered_json ToJson() const;
  std::string ToCsv() const;
};

struct AnalysisStats {
  double entity_count_mean = 0.0;
  double novel_ngram_ratio = 0.0;  // over all candidate bigrams
  std::size_t candidate_bigrams = 0;
  std::size_t novel_bigrams = 0;
};

// `entity_counts[i]` is the number of mentions in candidate i.
AnalysisStats ComputeAnalysisStats(std::span<const std::pair<std::string, std::string>> doc_and_candidate,
                                   std::span<const std::size_t> entity_counts);

// Scores every item. All NLI queries go to the backend in one Classify
// call so remote backends can batch. Backend failures propagate as
// BackendError naming the first sample id of the failed call.
EvalReport Evaluate(std::span<const EvalItem> items, EntailmentBackend& backend,
                    NliAggregation mode);

}  // namespace cfaug

#endif  // CFAUG_METRICS_H_
