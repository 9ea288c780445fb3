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

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "rouge_cases.h"

namespace cfaug {
namespace {

TEST(RougeTest, MatchesOracle) {
  for (const auto& c : testing::kRougeOracle) {
    const RougeScore s = RougeN(c.candidate, c.reference, c.n);
    EXPECT_NEAR(s.precision, c.precision, 1e-9) << c.candidate << " | " << c.reference;
    EXPECT_NEAR(s.recall, c.recall, 1e-9) << c.candidate << " | " << c.reference;
    EXPECT_NEAR(s.f1, c.f1, 1e-9) << c.candidate << " | " << c.reference;
  }
}

TEST(RougeTest, Tokens) {
  EXPECT_EQ(RougeTokens("New-York's mayor, Zoë!"),
            (std::vector<std::string>{"new", "york", "s", "mayor", "zoë"}));
  EXPECT_TRUE(RougeTokens(" ,. ").empty());
  EXPECT_THROW(RougeN("a", "a", 3), std::invalid_argument);
}

TEST(RougeTest, RougeLExamples) {
  const RougeScore s = RougeL("a b c d", "a x c y");
  EXPECT_DOUBLE_EQ(s.precision, 0.5);
  EXPECT_DOUBLE_EQ(s.recall, 0.5);
  EXPECT_DOUBLE_EQ(s.f1, 0.5);
  EXPECT_DOUBLE_EQ(RougeL("the cat sat", "the cat sat").f1, 1.0);
  EXPECT_DOUBLE_EQ(RougeL("", "the cat").f1, 0.0);
  EXPECT_DOUBLE_EQ(RougeL("police arrested two men", "two men were arrested by police").recall,
                   2.0 / 6.0);
}

std::string RandomWords(std::mt19937_64& rng, std::size_t max_len) {
  static const char* kWords[] = {"a", "b", "c", "the", "cat", "Cat", "sat", "on"};
  std::string out;
  const std::size_t n = rng() % (max_len + 1);
  for (std::size_t i = 0; i < n; ++i) out += std::string(i ? " " : "") + kWords[rng() % 8];
  return out;
}

TEST(RougeTest, SwapInvarianceAndRange) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::string a = RandomWords(rng, 10);
    const std::string b = RandomWords(rng, 10);
    for (int n : {1, 2}) {
      const RougeScore ab = RougeN(a, b, n);
      const RougeScore ba = RougeN(b, a, n);
      EXPECT_DOUBLE_EQ(ab.f1, ba.f1);
      EXPECT_DOUBLE_EQ(ab.precision, ba.recall);
      for (double v : {ab.precision, ab.recall, ab.f1}) {
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
      }
    }
    const RougeScore l = RougeL(a, b);
    EXPECT_DOUBLE_EQ(l.f1, RougeL(b, a).f1);
    EXPECT_LE(l.f1, 1.0);
  }
}

// Identity gives f1 = 1 whenever the text has at least n tokens.
TEST(RougeTest, Identity) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 500; ++trial) {
    const std::string a = RandomWords(rng, 10);
    const std::size_t len = RougeTokens(a).size();
    for (int n : {1, 2}) {
      EXPECT_DOUBLE_EQ(RougeN(a, a, n).f1, len >= static_cast<std::size_t>(n) ? 1.0 : 0.0);
    }
    EXPECT_DOUBLE_EQ(RougeL(a, a).f1, len > 0 ? 1.0 : 0.0);
  }
}

// Longest common subsequence by enumerating every subsequence of `a`.
std::size_t BruteLcs(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << a.size()); ++mask) {
    std::vector<std::uint32_t> sub;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (mask & (1u << i)) sub.push_back(a[i]);
    }
    if (sub.size() <= best) continue;
    std::size_t j = 0;
    for (std::size_t i = 0; i < b.size() && j < sub.size(); ++i) {
      if (b[i] == sub[j]) ++j;
    }
    if (j == sub.size()) best = sub.size();
  }
  return best;
}

std::vector<std::vector<std::uint32_t>> AllSequences(std::size_t max_len) {
  std::vector<std::vector<std::uint32_t>> out = {{}};
  std::vector<std::vector<std::uint32_t>> frontier = {{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::vector<std::uint32_t>> next;
    for (const auto& s : frontier) {
      for (std::uint32_t c = 0; c < 3; ++c) {
        auto t = s;
        t.push_back(c);
        next.push_back(t);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

// The full length-8 sweep lives in the acceptance binary; length 5 keeps
// this one fast.
TEST(LcsTest, ExhaustiveShort) {
  const auto seqs = AllSequences(5);
  for (const auto& a : seqs) {
    for (const auto& b : seqs) {
      ASSERT_EQ(LcsLength(a, b), BruteLcs(a, b));
    }
  }
}

TEST(LexicalBackendTest, Examples) {
  LexicalEntailmentBackend lex;
  EXPECT_EQ(lex.Judge("The bus driver was hurt in London.", "The driver was hurt.").label,
            EntailmentLabel::kEntailment);
  EXPECT_EQ(lex.Judge("The bus driver was hurt.", "Penguins sing opera.").label,
            EntailmentLabel::kNeutral);
  EXPECT_EQ(lex.Judge("anything", "").label, EntailmentLabel::kEntailment);
  EXPECT_EQ(lex.Judge("anything", "the of and").label, EntailmentLabel::kEntailment);
}

TEST(LexicalBackendTest, MonotoneInPremise) {
  LexicalEntailmentBackend lex;
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::string premise = RandomWords(rng, 8);
    const std::string extra = RandomWords(rng, 4);
    const std::string hypothesis = RandomWords(rng, 5);
    if (lex.Judge(premise, hypothesis).label == EntailmentLabel::kEntailment) {
      EXPECT_EQ(lex.Judge(premise + " " + extra, hypothesis).label,
                EntailmentLabel::kEntailment);
      EXPECT_EQ(lex.Judge(extra + " " + premise, hypothesis).label,
                EntailmentLabel::kEntailment);
    }
    EXPECT_NE(lex.Judge(premise, hypothesis).label, EntailmentLabel::kContradiction);
  }
}

TEST(E2eNliTest, Aggregation) {
  LexicalEntailmentBackend lex;
  const std::string doc = "The bus driver was hurt. Police closed the road.";
  EXPECT_EQ(E2eNliScore(doc, "Police closed the road.", lex, NliAggregation::kStrict).score, 1.0);
  const std::string mixed = "Police closed the road. Penguins sing opera.";
  const NliScore strict = E2eNliScore(doc, mixed, lex, NliAggregation::kStrict);
  EXPECT_EQ(strict.score, 0.0);
  EXPECT_EQ(strict.sentences, 2u);
  EXPECT_EQ(strict.entailed, 1u);
  EXPECT_EQ(E2eNliScore(doc, mixed, lex, NliAggregation::kMean).score, 0.5);
  const NliScore empty = E2eNliScore(doc, "  ", lex, NliAggregation::kMean);
  EXPECT_EQ(empty.score, 0.0);
  EXPECT_TRUE(empty.empty_summary);
}

TEST(E2eNliTest, ParseNames) {
  EXPECT_EQ(ParseNliAggregation("strict"), NliAggregation::kStrict);
  EXPECT_EQ(ParseNliAggregation("mean"), NliAggregation::kMean);
  EXPECT_FALSE(ParseNliAggregation("max"));
  EXPECT_EQ(ParseEntailmentLabel("ENTAILMENT"), EntailmentLabel::kEntailment);
  EXPECT_EQ(ParseEntailmentLabel("Neutral"), EntailmentLabel::kNeutral);
  EXPECT_FALSE(ParseEntailmentLabel("maybe"));
}

TEST(AnalysisStatsTest, Examples) {
  const std::vector<std::pair<std::string, std::string>> copied = {
      {"the cat sat on the mat", "the cat sat"}};
  const std::vector<std::size_t> one = {1};
  EXPECT_EQ(ComputeAnalysisStats(copied, one).novel_ngram_ratio, 0.0);
  const std::vector<std::pair<std::string, std::string>> novel = {
      {"the cat sat on the mat", "dogs bark loudly"}};
  EXPECT_EQ(ComputeAnalysisStats(novel, one).novel_ngram_ratio, 1.0);
  const std::vector<std::pair<std::string, std::string>> two = {{"a", "b"}, {"c", "d"}};
  const std::vector<std::size_t> counts = {1, 3};
  EXPECT_EQ(ComputeAnalysisStats(two, counts).entity_count_mean, 2.0);
}

// A backend that records calls and can be told to fail.
class FakeBackend : public EntailmentBackend {
 public:
  std::vector<EntailmentVerdict> Classify(std::span<const PremiseHypothesis> pairs) override {
    ++calls;
    if (fail_at) throw BackendError("boom", *fail_at);
    return lex.Classify(pairs);
  }
  std::string name() const override { return "fake"; }

  LexicalEntailmentBackend lex;
  int calls = 0;
  std::optional<std::size_t> fail_at;
};

std::vector<EvalItem> Items() {
  return {
      {"a", "The bus driver was hurt. Police came.", "A bus driver was hurt.",
       "The bus driver was hurt.", 0},
      {"b", "Philip met Norton in London.", "Philip met Norton.",
       "Philip met Norton. Zoë danced.", 3},
      {"c", "Rain fell.", "Rain fell.", "", 1},
  };
}

TEST(EvaluateTest, CorpusMeansMatchRows) {
  FakeBackend backend;
  const auto items = Items();
  const EvalReport r = Evaluate(items, backend, NliAggregation::kMean);
  EXPECT_EQ(backend.calls, 1);
  ASSERT_EQ(r.per_sample.size(), 3u);
  double r1 = 0, r2 = 0, rl = 0, nli = 0;
  for (const auto& row : r.per_sample) {
    r1 += row.rouge1.f1;
    r2 += row.rouge2.f1;
    rl += row.rougeL.f1;
    nli += row.nli_score;
  }
  EXPECT_NEAR(r.corpus.rouge1, r1 / 3, 1e-12);
  EXPECT_NEAR(r.corpus.rouge2, r2 / 3, 1e-12);
  EXPECT_NEAR(r.corpus.rougeL, rl / 3, 1e-12);
  EXPECT_NEAR(r.corpus.e2e_nli, nli / 3, 1e-12);
  EXPECT_EQ(r.per_sample[0].nli_score, 1.0);
  EXPECT_EQ(r.per_sample[1].nli_score, 0.5);
  EXPECT_TRUE(r.per_sample[2].empty_prediction);
  EXPECT_EQ(r.warnings.size(), 1u);
  EXPECT_NEAR(r.corpus.entity_count_mean, 4.0 / 3.0, 1e-12);

  const auto j = r.ToJson();
  EXPECT_EQ(j["aggregation"], "mean");
  EXPECT_NEAR(j["corpus"]["e2e_nli_pct"].get<double>(), 100 * r.corpus.e2e_nli, 1e-9);
  const std::string csv = r.ToCsv();
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
}

TEST(EvaluateTest, BackendFailureNamesSample) {
  FakeBackend backend;
  backend.fail_at = 2;  // third sentence belongs to sample "b"
  const auto items = Items();
  try {
    Evaluate(items, backend, NliAggregation::kStrict);
    FAIL();
  } catch (const BackendError& e) {
    EXPECT_NE(std::string(e.what()).find("sample b"), std::string::npos) << e.what();
  }
}

}  // namespace
}  // namespace cfaug
