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

#include "cfaug/perturb.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cfaug/annotate.h"
#include "cfaug/parallel.h"
#include "cfaug/text.h"
#include "cfaug/utf8.h"

namespace cfaug {
namespace {

// Rejection draws before falling back to enumerating the eligible pool.
constexpr int kMaxRejectionDraws = 32;

std::uint64_t Mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

struct Candidate {
  std::string text;
  std::string category;
};

// Distinct summary entity texts in first-occurrence order.
std::vector<Candidate> DistinctSummaryEntities(const Sample& s) {
  std::vector<Candidate> out;
  for (const auto& m : s.summary_entities) {
    if (std::none_of(out.begin(), out.end(),
                     [&](const Candidate& c) { return c.text == m.text; })) {
      out.push_back({m.text, m.category});
    }
  }
  return out;
}

// A replacement must not appear anywhere in the source document and must
// differ from the entity it replaces.
bool Eligible(std::string_view candidate, std::string_view replaced,
              std::string_view lowered_document) {
  const std::string lowered = text::AsciiLower(candidate);
  return lowered != text::AsciiLower(replaced) &&
         lowered_document.find(lowered) == std::string_view::npos;
}

template <typename Pool, typename TextOf>
std::optional<std::string> DrawReplacement(const Pool& pool, TextOf text_of,
                                           std::string_view replaced,
                                           std::string_view lowered_document,
                                           SampleRng& rng) {
  if (pool.empty()) return std::nullopt;
  for (int attempt = 0; attempt < kMaxRejectionDraws; ++attempt) {
    const auto& c = pool[rng.Below(pool.size())];
    if (Eligible(text_of(c), replaced, lowered_document)) {
      return std::string(text_of(c));
    }
  }
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (Eligible(text_of(pool[i]), replaced, lowered_document)) eligible.push_back(i);
  }
  if (eligible.empty()) return std::nullopt;
  return std::string(text_of(pool[eligible[rng.Below(eligible.size())]]));
}

bool IsWordByteBoundary(std::string_view s, std::size_t byte_pos, bool before) {
  // Inspect the code point adjacent to byte_pos.
  if (before) {
    if (byte_pos == 0) return true;
    std::size_t b = byte_pos - 1;
    while (b > 0 && (static_cast<unsigned char>(s[b]) & 0xC0) == 0x80) --b;
    const std::u32string cp = utf8::Decode(s.substr(b, byte_pos - b));
    return !text::IsWordChar(cp.front());
  }
  if (byte_pos >= s.size()) return true;
  std::size_t e = byte_pos + 1;
  while (e < s.size() && (static_cast<unsigned char>(s[e]) & 0xC0) == 0x80) ++e;
  const std::u32string cp = utf8::Decode(s.substr(byte_pos, e - byte_pos));
  return !text::IsWordChar(cp.front());
}

struct Edit {
  std::size_t begin = 0;  // bytes in the source summary
  std::size_t end = 0;
  std::string original;
  std::string replacement;
};

// Applies non-overlapping edits (earlier start wins, then longer span) and
// records provenance with character offsets into the result.
std::pair<std::string, std::vector<Provenance>> Splice(std::string_view source,
                                                       std::vector<Edit> edits) {
  std::sort(edits.begin(), edits.end(), [](const Edit& a, const Edit& b) {
    return a.begin != b.begin ? a.begin < b.begin : a.end > b.end;
  });
  std::string out;
  std::vector<Provenance> provenance;
  std::size_t cursor = 0;
  std::size_t out_chars = 0;
  for (const Edit& e : edits) {
    if (e.begin < cursor) continue;
    const std::string_view keep = source.substr(cursor, e.begin - cursor);
    out.append(keep);
    out_chars += utf8::Length(keep);
    provenance.push_back({e.original, e.replacement, out_chars});
    out.append(e.replacement);
    out_chars += utf8::Length(e.replacement);
    cursor = e.end;
  }
  out.append(source.substr(cursor));
  return {std::move(out), std::move(provenance)};
}

// Every occurrence of `surface` in the summary that sits on word boundaries,
// plus the annotated mention spans themselves.
void CollectOccurrences(const Sample& s, const utf8::CharIndex& index,
                        const std::string& surface, const std::string& replacement,
                        std::vector<Edit>& edits) {
  const std::string_view summary = s.summary;
  std::size_t pos = summary.find(surface);
  while (pos != std::string_view::npos) {
    const std::size_t end = pos + surface.size();
    if (IsWordByteBoundary(summary, pos, true) &&
        IsWordByteBoundary(summary, end, false)) {
      edits.push_back({pos, end, surface, replacement});
    }
    pos = summary.find(surface, pos + 1);
  }
  for (const auto& m : s.summary_entities) {
    if (m.text != surface) continue;
    const std::size_t b = index.ByteOffset(m.start);
    const std::size_t e = index.ByteOffset(m.end);
    const bool seen = std::any_of(edits.begin(), edits.end(), [&](const Edit& x) {
      return x.begin == b && x.end == e;
    });
    if (!seen) edits.push_back({b, e, surface, replacement});
  }
}

TransformOutcome ReplaceEntities(const Sample& s, const EntityIndex& idx,
                                 const AugmentConfig& cfg, std::uint64_t sample_seed,
                                 bool same_category) {
  const std::vector<Candidate> targets = DistinctSummaryEntities(s);
  if (targets.empty()) return SkipReason::kNoEntities;

  SampleRng rng(sample_seed);
  const std::size_t k = std::min<std::size_t>(
      static_cast<std::size_t>(cfg.entities_per_summary), targets.size());
  const std::vector<std::size_t> chosen = rng.Choose(targets.size(), k);
  const std::string lowered_document = text::AsciiLower(s.document);
  const utf8::CharIndex index(s.summary);

  std::vector<Edit> edits;
  for (std::size_t pick : chosen) {
    const Candidate& target = targets[pick];
    std::optional<std::string> replacement;
    if (same_category) {
      auto it = idx.by_category.find(target.category);
      if (it != idx.by_category.end()) {
        replacement = DrawReplacement(
            it->second, [](const std::string& t) -> std::string_view { return t; },
            target.text, lowered_document, rng);
      }
    } else {
      replacement = DrawReplacement(
          idx.all,
          [](const std::pair<std::string, std::string>& e) -> std::string_view {
            return e.first;
          },
          target.text, lowered_document, rng);
    }
    if (replacement) CollectOccurrences(s, index, target.text, *replacement, edits);
  }
  if (edits.empty()) return SkipReason::kNoEligibleReplacement;

  auto [target, provenance] = Splice(s.summary, std::move(edits));
  const Transform t = same_category ? Transform::kCategoricalEntityReplace
                                    : Transform::kEntityReplace;
  return AugmentedPair{s.id + "#" + std::string(TransformName(t)),
                       WithControlCode(cfg.control_codes.wrong, s.document),
                       std::move(target), t, std::move(provenance)};
}

}  // namespace

void EntityIndexBuilder::AddEntity(const std::string& text,
                                   const std::string& category) {
  std::string key = category;
  key.push_back('\0');
  key += text;
  if (!seen_.insert(std::move(key)).second) return;
  index_.all.emplace_back(text, category);
  index_.by_category[category].push_back(text);
}

void EntityIndexBuilder::Add(const Sample& s) {
  for (const auto& m : s.document_entities) AddEntity(m.text, m.category);
  for (const auto& m : s.summary_entities) AddEntity(m.text, m.category);
}

EntityIndex EntityIndexBuilder::Finish() && { return std::move(index_); }

EntityIndex BuildEntityIndex(std::span<const Sample> corpus, std::string source) {
  EntityIndexBuilder builder(std::move(source));
  for (const auto& s : corpus) builder.Add(s);
  return std::move(builder).Finish();
}

nlohmann::ordered_json EntityIndexToJson(const EntityIndex& idx) {
  nlohmann::ordered_json j;
  j["source"] = idx.source;
  j["by_category"] = nlohmann::ordered_json::object();
  for (const auto& [category, texts] : idx.by_category) j["by_category"][category] = texts;
  j["all"] = nlohmann::ordered_json::array();
  for (const auto& [text, category] : idx.all) {
    nlohmann::ordered_json e;
    e["text"] = text;
    e["category"] = category;
    j["all"].push_back(std::move(e));
  }
  return j;
}

EntityIndex EntityIndexFromJson(const nlohmann::json& j) {
  EntityIndexBuilder builder(j.value("source", std::string()));
  for (const auto& e : j.at("all")) {
    builder.AddEntity(e.at("text").get<std::string>(),
                      e.at("category").get<std::string>());
  }
  return std::move(builder).Finish();
}

std::string_view StrategyName(Strategy s) {
  switch (s) {
    case Strategy::kEntityReplace: return "er";
    case Strategy::kCategoricalEntityReplace: return "cat-er";
    case Strategy::kHypernymReplace: return "wn-hyper";
  }
  return "";
}

std::optional<Strategy> ParseStrategy(std::string_view name) {
  for (Strategy s : {Strategy::kEntityReplace, Strategy::kCategoricalEntityReplace,
                     Strategy::kHypernymReplace}) {
    if (StrategyName(s) == name) return s;
  }
  return std::nullopt;
}

Transform StrategyTransform(Strategy s) {
  switch (s) {
    case Strategy::kEntityReplace: return Transform::kEntityReplace;
    case Strategy::kCategoricalEntityReplace: return Transform::kCategoricalEntityReplace;
    case Strategy::kHypernymReplace: return Transform::kHypernymReplace;
  }
  return Transform::kOriginal;
}

void AugmentConfig::Validate() const {
  if (!(noun_fraction >= 0.0 && noun_fraction <= 1.0)) {
    throw std::invalid_argument("noun_fraction must be in [0, 1]");
  }
  if (entities_per_summary < 1) {
    throw std::invalid_argument("entities_per_summary must be >= 1");
  }
}

nlohmann::ordered_json AugmentConfig::ToJson() const {
  nlohmann::ordered_json j;
  j["strategy"] = StrategyName(strategy);
  j["seed"] = seed;
  j["noun_fraction"] = noun_fraction;
  j["entities_per_summary"] = entities_per_summary;
  j["control_codes"]["ORIGINAL"] = control_codes.original;
  j["control_codes"]["WRONG"] = control_codes.wrong;
  j["control_codes"]["GENERAL"] = control_codes.general;
  return j;
}

std::string WithControlCode(std::string_view code, std::string_view document) {
  std::string out;
  out.reserve(code.size() + 2 + document.size());
  out.append(code);
  out.append(": ");
  out.append(document);
  return out;
}

std::string_view SkipReasonName(SkipReason r) {
  switch (r) {
    case SkipReason::kNoEntities: return "no_entities";
    case SkipReason::kNoEligibleReplacement: return "no_eligible_replacement";
    case SkipReason::kNoNouns: return "no_nouns";
    case SkipReason::kNoneSelected: return "none_selected";
    case SkipReason::kNoHypernym: return "no_hypernym";
  }
  return "";
}

std::uint64_t SampleSeed(std::uint64_t run_seed, std::string_view sample_id) {
  // FNV-1a over the seed's little-endian bytes and the id, then a
  // splitmix64 finalizer.
  std::uint64_t h = 0xCBF29CE484222325ULL;
  auto feed = [&h](unsigned char b) {
    h ^= b;
    h *= 0x100000001B3ULL;
  };
  for (int i = 0; i < 8; ++i) feed(static_cast<unsigned char>(run_seed >> (8 * i)));
  for (char c : sample_id) feed(static_cast<unsigned char>(c));
  return Mix64(h);
}

std::size_t SampleRng::Below(std::size_t n) {
  if (n == 0) throw std::invalid_argument("SampleRng::Below(0)");
  const std::uint64_t bound = n;
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = engine_();
    if (r >= threshold) return static_cast<std::size_t>(r % bound);
  }
}

std::vector<std::size_t> SampleRng::Choose(std::size_t n, std::size_t k) {
  k = std::min(k, n);
  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = i;
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(pool[i], pool[i + Below(n - i)]);
  }
  pool.resize(k);
  return pool;
}

TransformOutcome EntityReplace(const Sample& s, const EntityIndex& idx,
                               const AugmentConfig& cfg, std::uint64_t sample_seed) {
  return ReplaceEntities(s, idx, cfg, sample_seed, false);
}

TransformOutcome CategoricalEntityReplace(const Sample& s, const EntityIndex& idx,
                                          const AugmentConfig& cfg,
                                          std::uint64_t sample_seed) {
  return ReplaceEntities(s, idx, cfg, sample_seed, true);
}

std::size_t NounQuota(double fraction, std::size_t n) {
  const double raw = std::ceil(fraction * static_cast<double>(n) - 1e-9);
  if (raw <= 0.0) return 0;
  return std::min(n, static_cast<std::size_t>(raw));
}

TransformOutcome HypernymReplace(const Sample& s, const SynsetGraph& g,
                                 const AugmentConfig& cfg, std::uint64_t sample_seed) {
  const std::vector<TokenSpan> nouns = SelectNouns(s, g);
  if (nouns.empty()) return SkipReason::kNoNouns;
  const std::size_t quota = NounQuota(cfg.noun_fraction, nouns.size());
  if (quota == 0) return SkipReason::kNoneSelected;

  SampleRng rng(sample_seed);
  const utf8::CharIndex index(s.summary);
  std::vector<Edit> edits;
  for (std::size_t pick : rng.Choose(nouns.size(), quota)) {
    const TokenSpan& noun = nouns[pick];
    auto hypernym = g.HypernymOf(text::AsciiLower(noun.text));
    if (!hypernym) continue;
    edits.push_back({index.ByteOffset(noun.start), index.ByteOffset(noun.end),
                     noun.text, std::move(*hypernym)});
  }
  if (edits.empty()) return SkipReason::kNoHypernym;

  auto [target, provenance] = Splice(s.summary, std::move(edits));
  return AugmentedPair{s.id + "#" + std::string(TransformName(Transform::kHypernymReplace)),
                       WithControlCode(cfg.control_codes.general, s.document),
                       std::move(target), Transform::kHypernymReplace,
                       std::move(provenance)};
}

AugmentedPair OriginalPair(const Sample& s, const ControlCodes& codes) {
  return AugmentedPair{s.id + "#" + std::string(TransformName(Transform::kOriginal)),
                       WithControlCode(codes.original, s.document), s.summary,
                       Transform::kOriginal, {}};
}

Augmenter::Augmenter(AugmentConfig cfg, const EntityIndex* index,
                     const SynsetGraph* graph)
    : cfg_(std::move(cfg)), index_(index), graph_(graph) {
  cfg_.Validate();
  if (cfg_.strategy == Strategy::kHypernymReplace) {
    if (graph_ == nullptr) {
      throw std::invalid_argument("strategy wn-hyper requires a WordNet graph");
    }
  } else if (index_ == nullptr) {
    throw std::invalid_argument("strategy " + std::string(StrategyName(cfg_.strategy)) +
                                " requires an entity index");
  }
}

SampleOutput Augmenter::Process(const Sample& s) const {
  const std::uint64_t seed = SampleSeed(cfg_.seed, s.id);
  SampleOutput out{OriginalPair(s, cfg_.control_codes), SkipReason::kNoEntities};
  switch (cfg_.strategy) {
    case Strategy::kEntityReplace:
      out.transformed = EntityReplace(s, *index_, cfg_, seed);
      break;
    case Strategy::kCategoricalEntityReplace:
      out.transformed = CategoricalEntityReplace(s, *index_, cfg_, seed);
      break;
    case Strategy::kHypernymReplace:
      out.transformed = HypernymReplace(s, *graph_, cfg_, seed);
      break;
  }
  return out;
}

std::size_t SkipReport::total_skips() const {
  std::size_t total = 0;
  for (const auto& [reason, n] : skips) total += n;
  return total;
}

void SkipReport::Record(const SampleOutput& out) {
  ++samples;
  ++originals;
  if (const auto* reason = std::get_if<SkipReason>(&out.transformed)) {
    ++skips[std::string(SkipReasonName(*reason))];
  } else {
    ++transformed;
  }
}

nlohmann::ordered_json SkipReport::ToJson(const AugmentConfig& cfg) const {
  nlohmann::ordered_json j;
  j["config"] = cfg.ToJson();
  j["samples"] = samples;
  j["pairs"] = originals + transformed;
  j["originals"] = originals;
  j["transformed"] = transformed;
  j["total_skips"] = total_skips();
  j["skips"] = nlohmann::ordered_json::object();
  for (const auto& [reason, n] : skips) j["skips"][reason] = n;
  return j;
}

SkipReport AugmentStream(const SampleSource& source, const Augmenter& augmenter,
                         int workers, const PairSink& sink, std::size_t batch_size) {
  SkipReport report;
  batch_size = std::max<std::size_t>(batch_size, 1);
  std::vector<Sample> batch;
  for (;;) {
    batch.clear();
    while (batch.size() < batch_size) {
      auto s = source();
      if (!s) break;
      batch.push_back(std::move(*s));
    }
    if (batch.empty()) break;

    const auto results = ParallelMap(
        std::span<const Sample>(batch), workers,
        [&augmenter](const Sample& s) { return augmenter.Process(s); });
    for (const auto& r : results) {
      report.Record(r);
      sink(r.original);
      if (const auto* pair = std::get_if<AugmentedPair>(&r.transformed)) sink(*pair);
    }
    const bool exhausted = batch.size() < batch_size;
    if (exhausted) break;
  }
  return report;
}

std::vector<AugmentedPair> AugmentCorpus(std::span<const Sample> corpus,
                                         const Augmenter& augmenter, int workers,
                                         SkipReport* report) {
  std::size_t pos = 0;
  std::vector<AugmentedPair> out;
  out.reserve(corpus.size() * 2);
  SkipReport r = AugmentStream(
      [&]() -> std::optional<Sample> {
        if (pos >= corpus.size()) return std::nullopt;
        return corpus[pos++];
      },
      augmenter, workers, [&](const AugmentedPair& p) { out.push_back(p); });
  if (report) *report = std::move(r);
  return out;
}

}  // namespace cfaug
