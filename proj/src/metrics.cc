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

#include "cfaug/metrics.h"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "cfaug/preprocess.h"
#include "cfaug/text.h"
#include "cfaug/utf8.h"

namespace cfaug {
namespace {

double Ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::unordered_map<std::string, std::size_t> NGramCounts(
    const std::vector<std::string>& tokens, int n, std::size_t& total) {
  std::unordered_map<std::string, std::size_t> counts;
  total = 0;
  if (tokens.size() < static_cast<std::size_t>(n)) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key = tokens[i];
    for (int k = 1; k < n; ++k) {
      key.push_back(' ');
      key += tokens[i + k];
    }
    ++counts[key];
    ++total;
  }
  return counts;
}

std::string FormatDouble(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

double Mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

RougeScore MakeRougeScore(double precision, double recall) {
  RougeScore s{precision, recall, 0.0};
  if (precision + recall > 0.0) s.f1 = 2.0 * precision * recall / (precision + recall);
  return s;
}

std::vector<std::string> RougeTokens(std::string_view input) {
  std::vector<std::string> out;
  const std::u32string t = utf8::Decode(input);
  std::size_t i = 0;
  while (i < t.size()) {
    if (!text::IsWordChar(t[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < t.size() && text::IsWordChar(t[j])) ++j;
    out.push_back(text::AsciiLower(utf8::Encode(std::u32string_view(t).substr(i, j - i))));
    i = j;
  }
  return out;
}

RougeScore RougeN(std::string_view candidate, std::string_view reference, int n) {
  if (n != 1 && n != 2) throw std::invalid_argument("ROUGE-N supports n = 1 or 2");
  std::size_t cand_total = 0;
  std::size_t ref_total = 0;
  const auto cand = NGramCounts(RougeTokens(candidate), n, cand_total);
  const auto ref = NGramCounts(RougeTokens(reference), n, ref_total);
  std::size_t overlap = 0;
  for (const auto& [gram, count] : cand) {
    auto it = ref.find(gram);
    if (it != ref.end()) overlap += std::min(count, it->second);
  }
  return MakeRougeScore(Ratio(overlap, cand_total), Ratio(overlap, ref_total));
}

std::size_t LcsLength(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  if (a.empty() || b.empty()) return 0;
  std::vector<std::size_t> row(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = 0;  // row[j-1] from the previous i
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = a[i - 1] == b[j - 1] ? diag + 1 : std::max(up, row[j - 1]);
      diag = up;
    }
  }
  return row[b.size()];
}

RougeScore RougeLFromTokens(std::span<const std::uint32_t> candidate,
                            std::span<const std::uint32_t> reference) {
  const std::size_t lcs = LcsLength(candidate, reference);
  return MakeRougeScore(Ratio(lcs, candidate.size()), Ratio(lcs, reference.size()));
}

RougeScore RougeL(std::string_view candidate, std::string_view reference) {
  std::unordered_map<std::string, std::uint32_t> vocab;
  auto encode = [&vocab](const std::vector<std::string>& tokens) {
    std::vector<std::uint32_t> ids;
    ids.reserve(tokens.size());
    for (const auto& t : tokens) {
      ids.push_back(vocab.try_emplace(t, static_cast<std::uint32_t>(vocab.size()))
                        .first->second);
    }
    return ids;
  };
  const auto c = encode(RougeTokens(candidate));
  const auto r = encode(RougeTokens(reference));
  return RougeLFromTokens(c, r);
}

std::string_view EntailmentLabelName(EntailmentLabel l) {
  switch (l) {
    case EntailmentLabel::kEntailment: return "entailment";
    case EntailmentLabel::kNeutral: return "neutral";
    case EntailmentLabel::kContradiction: return "contradiction";
  }
  return "";
}

std::optional<EntailmentLabel> ParseEntailmentLabel(std::string_view name) {
  const std::string lowered = text::AsciiLower(name);
  for (auto l : {EntailmentLabel::kEntailment, EntailmentLabel::kNeutral,
                 EntailmentLabel::kContradiction}) {
    if (EntailmentLabelName(l) == lowered) return l;
  }
  return std::nullopt;
}

EntailmentVerdict LexicalEntailmentBackend::Judge(std::string_view premise,
                                                  std::string_view hypothesis) const {
  std::size_t content = 0;
  std::size_t found = 0;
  const auto premise_tokens = RougeTokens(premise);
  const std::unordered_set<std::string> premise_set(premise_tokens.begin(),
                                                    premise_tokens.end());
  for (const auto& tok : RougeTokens(hypothesis)) {
    if (text::IsStopword(tok)) continue;
    ++content;
    if (premise_set.contains(tok)) ++found;
  }
  if (content == 0) return {EntailmentLabel::kEntailment, 1.0};
  const double coverage = Ratio(found, content);
  return {coverage >= threshold_ ? EntailmentLabel::kEntailment : EntailmentLabel::kNeutral,
          coverage};
}

std::vector<EntailmentVerdict> LexicalEntailmentBackend::Classify(
    std::span<const PremiseHypothesis> pairs) {
  std::vector<EntailmentVerdict> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(Judge(p.premise, p.hypothesis));
  return out;
}

std::string_view NliAggregationName(NliAggregation a) {
  return a == NliAggregation::kStrict ? "strict" : "mean";
}

std::optional<NliAggregation> ParseNliAggregation(std::string_view name) {
  if (name == "strict") return NliAggregation::kStrict;
  if (name == "mean") return NliAggregation::kMean;
  return std::nullopt;
}

NliScore AggregateVerdicts(std::span<const EntailmentVerdict> verdicts,
                           NliAggregation mode) {
  NliScore s;
  s.sentences = verdicts.size();
  if (verdicts.empty()) {
    s.empty_summary = true;
    return s;
  }
  s.entailed = static_cast<std::size_t>(
      std::count_if(verdicts.begin(), verdicts.end(), [](const EntailmentVerdict& v) {
        return v.label == EntailmentLabel::kEntailment;
      }));
  if (mode == NliAggregation::kStrict) {
    s.score = s.entailed == s.sentences ? 1.0 : 0.0;
  } else {
    s.score = Ratio(s.entailed, s.sentences);
  }
  return s;
}

NliScore E2eNliScore(std::string_view document, std::string_view summary,
                     EntailmentBackend& backend, NliAggregation mode) {
  std::vector<PremiseHypothesis> pairs;
  for (const auto& sentence : SplitSentences(summary)) {
    pairs.push_back({std::string(document), sentence.text});
  }
  if (pairs.empty()) return AggregateVerdicts({}, mode);
  const auto verdicts = backend.Classify(pairs);
  if (verdicts.size() != pairs.size()) {
    throw BackendError("backend returned " + std::to_string(verdicts.size()) +
                       " verdicts for " + std::to_string(pairs.size()) + " pairs");
  }
  return AggregateVerdicts(verdicts, mode);
}

AnalysisStats ComputeAnalysisStats(
    std::span<const std::pair<std::string, std::string>> doc_and_candidate,
    std::span<const std::size_t> entity_counts) {
  AnalysisStats s;
  if (!entity_counts.empty()) {
    s.entity_count_mean =
        static_cast<double>(std::accumulate(entity_counts.begin(), entity_counts.end(),
                                            std::size_t{0})) /
        static_cast<double>(entity_counts.size());
  }
  for (const auto& [document, candidate] : doc_and_candidate) {
    std::size_t total = 0;
    const auto doc_grams = NGramCounts(RougeTokens(document), 2, total);
    const auto cand = RougeTokens(candidate);
    for (std::size_t i = 0; i + 1 < cand.size(); ++i) {
      ++s.candidate_bigrams;
      if (!doc_grams.contains(cand[i] + " " + cand[i + 1])) ++s.novel_bigrams;
    }
  }
  s.novel_ngram_ratio = Ratio(s.novel_bigrams, s.candidate_bigrams);
  return s;
}

EvalReport Evaluate(std::span<const EvalItem> items, EntailmentBackend& backend,
                    NliAggregation mode) {
  EvalReport report;
  report.aggregation = mode;
  report.backend = backend.name();

  std::vector<PremiseHypothesis> pairs;
  std::vector<std::size_t> first_pair(items.size() + 1, 0);
  for (std::size_t i = 0; i < items.size(); ++i) {
    first_pair[i] = pairs.size();
    for (const auto& sentence : SplitSentences(items[i].prediction)) {
      pairs.push_back({items[i].document, sentence.text});
    }
  }
  first_pair[items.size()] = pairs.size();

  std::vector<EntailmentVerdict> verdicts;
  if (!pairs.empty()) {
    try {
      verdicts = backend.Classify(pairs);
    } catch (const BackendError& e) {
      std::string where;
      if (auto failed = e.failed_pair()) {
        const auto it = std::upper_bound(first_pair.begin(), first_pair.end(), *failed);
        const auto sample = static_cast<std::size_t>(it - first_pair.begin()) - 1;
        if (sample < items.size()) where = " (sample " + items[sample].id + ")";
      }
      throw BackendError(std::string(e.what()) + where, e.failed_pair());
    }
    if (verdicts.size() != pairs.size()) {
      throw BackendError("backend returned " + std::to_string(verdicts.size()) +
                         " verdicts for " + std::to_string(pairs.size()) + " pairs");
    }
  }

  std::vector<double> r1, r2, rl, nli;
  std::vector<std::pair<std::string, std::string>> analysis_input;
  std::vector<std::size_t> entity_counts;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const EvalItem& item = items[i];
    EvalRow row;
    row.id = item.id;
    row.rouge1 = RougeN(item.prediction, item.reference, 1);
    row.rouge2 = RougeN(item.prediction, item.reference, 2);
    row.rougeL = RougeL(item.prediction, item.reference);
    const std::span<const EntailmentVerdict> mine(verdicts.data() + first_pair[i],
                                                  first_pair[i + 1] - first_pair[i]);
    const NliScore score = AggregateVerdicts(mine, mode);
    row.nli_score = score.score;
    row.nli_sentences = score.sentences;
    row.empty_prediction = score.empty_summary;
    if (score.empty_summary) {
      report.warnings.push_back("empty prediction for " + item.id + " scored 0");
    }
    r1.push_back(row.rouge1.f1);
    r2.push_back(row.rouge2.f1);
    rl.push_back(row.rougeL.f1);
    nli.push_back(row.nli_score);
    analysis_input.emplace_back(item.document, item.prediction);
    entity_counts.push_back(item.prediction_entities);
    report.per_sample.push_back(std::move(row));
  }
  report.corpus.rouge1 = Mean(r1);
  report.corpus.rouge2 = Mean(r2);
  report.corpus.rougeL = Mean(rl);
  report.corpus.e2e_nli = Mean(nli);
  const AnalysisStats stats = ComputeAnalysisStats(analysis_input, entity_counts);
  report.corpus.entity_count_mean = stats.entity_count_mean;
  report.corpus.novel_ngram_ratio = stats.novel_ngram_ratio;
  return report;
}

nlohmann::ordered_json EvalReport::ToJson() const {
  nlohmann::ordered_json j;
  j["backend"] = backend;
  j["aggregation"] = NliAggregationName(aggregation);
  nlohmann::ordered_json c;
  c["samples"] = per_sample.size();
  c["rouge1"] = corpus.rouge1;
  c["rouge2"] = corpus.rouge2;
  c["rougeL"] = corpus.rougeL;
  c["e2e_nli"] = corpus.e2e_nli;
  c["e2e_nli_pct"] = corpus.e2e_nli * 100.0;
  c["entity_count_mean"] = corpus.entity_count_mean;
  c["novel_ngram_ratio"] = corpus.novel_ngram_ratio;
  j["corpus"] = std::move(c);
  j["per_sample"] = nlohmann::ordered_json::array();
  for (const auto& row : per_sample) {
    nlohmann::ordered_json r;
    r["id"] = row.id;
    r["rouge1"] = row.rouge1.f1;
    r["rouge2"] = row.rouge2.f1;
    r["rougeL"] = row.rougeL.f1;
    r["nli_score"] = row.nli_score;
    r["nli_sentences"] = row.nli_sentences;
    j["per_sample"].push_back(std::move(r));
  }
  j["warnings"] = warnings;
  return j;
}

std::string EvalReport::ToCsv() const {
  std::string out = "id,rouge1,rouge2,rougeL,nli_score\n";
  for (const auto& row : per_sample) {
    std::string id = row.id;
    if (id.find_first_of(",\"\n") != std::string::npos) {
      std::string quoted = "\"";
      for (char c : id) {
        if (c == '"') quoted.push_back('"');
        quoted.push_back(c);
      }
      id = quoted + "\"";
    }
    out += id + "," + FormatDouble(row.rouge1.f1) + "," + FormatDouble(row.rouge2.f1) +
           "," + FormatDouble(row.rougeL.f1) + "," + FormatDouble(row.nli_score) + "\n";
  }
  return out;
}

}  // namespace cfaug
