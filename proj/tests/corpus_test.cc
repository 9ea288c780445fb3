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

#include "cfaug/corpus.h"

#include <gtest/gtest.h>

#include <random>

#include "cfaug/utf8.h"
#include "test_util.h"

namespace cfaug {
namespace {

using testing::ReadText;
using testing::TempDir;
using testing::WriteText;

constexpr char kMinimal[] =
    R"({"id":"a","document":"Bob ran.","summary":"Bob ran.",)"
    R"("document_entities":[{"start":0,"end":3,"text":"Bob","category":"PERSON"}],)"
    R"("summary_entities":[{"start":0,"end":3,"text":"Bob","category":"PERSON"}]})";

Sample MakeSample() {
  Sample s;
  s.id = "s1";
  s.document = "Philip met Norton in London.";
  s.summary = "Philip met Norton.";
  s.document_entities = {{0, 6, "Philip", "PERSON"}, {11, 17, "Norton", "PERSON"},
                         {21, 27, "London", "GPE"}};
  s.summary_entities = {{0, 6, "Philip", "PERSON"}, {11, 17, "Norton", "PERSON"}};
  return s;
}

TEST(ReadCorpusTest, MinimalRecord) {
  TempDir dir;
  WriteText(dir / "c.jsonl", std::string(kMinimal) + "\n");
  ReadStats stats;
  auto samples = ReadCorpus(dir / "c.jsonl", true, &stats);
  ASSERT_EQ(samples.size(), 1u);
  EXPECT_EQ(samples[0].id, "a");
  EXPECT_EQ(samples[0].document_entities[0].text, "Bob");
  EXPECT_FALSE(samples[0].summary_noun_tokens.has_value());
  EXPECT_EQ(stats.accepted, 1u);
}

TEST(ReadCorpusTest, SpanOutOfBoundsIsReportedWithLine) {
  TempDir dir;
  WriteText(dir / "c.jsonl",
            R"({"id":"a","document":"Bob ran.","summary":"x",)"
            R"("document_entities":[{"start":0,"end":99,"text":"Bob","category":"PERSON"}],)"
            R"("summary_entities":[]})"
            "\n");
  try {
    ReadCorpus(dir / "c.jsonl", true);
    FAIL() << "expected CorpusError";
  } catch (const CorpusError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_NE(std::string(e.what()).find("span out of bounds"), std::string::npos);
  }
}

TEST(ReadCorpusTest, LenientModeSkipsMalformedLines) {
  TempDir dir;
  WriteText(dir / "c.jsonl", std::string(kMinimal) + "\n{not json\n" +
                                 R"({"id":"b","document":"d","summary":"s"})" + "\n");
  ReadStats stats;
  auto samples = ReadCorpus(dir / "c.jsonl", false, &stats);
  EXPECT_EQ(samples.size(), 2u);
  EXPECT_EQ(stats.skipped, 1u);
  ASSERT_EQ(stats.errors.size(), 1u);
  EXPECT_TRUE(stats.errors[0].starts_with("line 2: malformed JSON"));
  EXPECT_THROW(ReadCorpus(dir / "c.jsonl", true), CorpusError);
}

TEST(ReadCorpusTest, DuplicateIdRejected) {
  TempDir dir;
  WriteText(dir / "c.jsonl", std::string(kMinimal) + "\n" + kMinimal + "\n");
  try {
    ReadCorpus(dir / "c.jsonl", true);
    FAIL();
  } catch (const CorpusError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("duplicate id"), std::string::npos);
  }
}

TEST(ReadCorpusTest, MissingAndMistypedFields) {
  TempDir dir;
  WriteText(dir / "c.jsonl", R"({"id":"a","summary":"s"})"
                             "\n"
                             R"({"id":7,"document":"d","summary":"s"})"
                             "\n"
                             R"({"id":"c","document":"d","summary":"s","document_entities":[{"start":-1,"end":1,"text":"d","category":"X"}]})"
                             "\n");
  ReadStats stats;
  EXPECT_TRUE(ReadCorpus(dir / "c.jsonl", false, &stats).empty());
  ASSERT_EQ(stats.errors.size(), 3u);
  EXPECT_NE(stats.errors[0].find("missing field \"document\""), std::string::npos);
  EXPECT_NE(stats.errors[1].find("id: expected string"), std::string::npos);
  EXPECT_NE(stats.errors[2].find("expected non-negative integer"), std::string::npos);
}

TEST(ReadCorpusTest, CharacterOffsetsOverUtf8) {
  TempDir dir;
  // "Renée" starts at character 8 but byte 9.
  WriteText(dir / "c.jsonl",
            R"({"id":"u","document":"Zoë met Renée.","summary":"Renée left.",)"
            R"("document_entities":[{"start":8,"end":13,"text":"Renée","category":"PERSON"}],)"
            R"("summary_entities":[{"start":0,"end":5,"text":"Renée","category":"PERSON"}],)"
            R"("summary_noun_tokens":[{"start":6,"end":10}]})"
            "\n");
  auto samples = ReadCorpus(dir / "c.jsonl", true);
  ASSERT_EQ(samples.size(), 1u);
  ASSERT_TRUE(samples[0].summary_noun_tokens);
  EXPECT_EQ((*samples[0].summary_noun_tokens)[0].text, "left");
}

TEST(ReadCorpusTest, UnknownFieldsPreservedForCorpusOutput) {
  TempDir dir;
  WriteText(dir / "c.jsonl",
            R"({"id":"a","document":"d","summary":"s","zeta":1,"alpha":{"k":[1,2]}})"
            "\n");
  auto samples = ReadCorpus(dir / "c.jsonl", true);
  ASSERT_EQ(samples.size(), 1u);
  EXPECT_EQ(samples[0].extra["zeta"], 1);
  EXPECT_EQ(SerializeSample(samples[0]),
            R"({"id":"a","document":"d","summary":"s","document_entities":[],)"
            R"("summary_entities":[],"alpha":{"k":[1,2]},"zeta":1})");
}

TEST(ValidateSampleTest, WellFormed) { EXPECT_TRUE(ValidateSample(MakeSample()).empty()); }

TEST(ValidateSampleTest, TextSpanMismatch) {
  Sample s;
  s.id = "x";
  s.document = "d";
  s.summary = "Bob ob went";
  s.summary_entities = {{4, 7, "Bob", "PERSON"}};  // substring is "ob "
  EXPECT_EQ(ValidateSample(s),
            std::vector<std::string>{"summary_entities[0]: text/span mismatch"});
}

TEST(ValidateSampleTest, Overlap) {
  Sample s;
  s.id = "x";
  s.document = "abcdefghij";
  s.summary = "s";
  s.document_entities = {{0, 5, "abcde", "X"}, {3, 8, "defgh", "X"}};
  EXPECT_EQ(ValidateSample(s),
            std::vector<std::string>{"document_entities: overlap at index 1"});
}

TEST(ValidateSampleTest, EmptyIdUnsortedAndEmptySpan) {
  Sample s = MakeSample();
  s.id.clear();
  std::swap(s.document_entities[0], s.document_entities[2]);
  s.summary_entities.push_back({5, 5, "", "X"});
  const auto v = ValidateSample(s);
  EXPECT_NE(std::find(v.begin(), v.end(), "id: empty"), v.end());
  EXPECT_NE(std::find(v.begin(), v.end(), "document_entities: not sorted at index 1"), v.end());
  EXPECT_NE(std::find(v.begin(), v.end(), "summary_entities[2]: span out of bounds"), v.end());
}

TEST(WritePairsTest, EmptyStream) {
  TempDir dir;
  EXPECT_EQ(WritePairs({}, dir / "p.jsonl"), 0u);
  EXPECT_EQ(ReadText(dir / "p.jsonl"), "");
}

TEST(WritePairsTest, FixedKeyOrder) {
  AugmentedPair p{"a#ER", "generate a wrong summary: doc", "Norton ran", Transform::kEntityReplace,
                  {{"Bob", "Norton", 0}}};
  EXPECT_EQ(SerializePair(p),
            R"({"id":"a#ER","input":"generate a wrong summary: doc","target":"Norton ran",)"
            R"("transform":"ER","provenance":[{"orig":"Bob","repl":"Norton","start":0}]})");
}

std::string RandomText(std::mt19937_64& rng) {
  static const std::vector<std::string> kPieces = {
      "a", "Bob", " ", "\"", "\\", "\n", "é", "日本", "\t", "{", "}", ",", "😀", "x y"};
  std::string out;
  const std::size_t n = rng() % 8;
  for (std::size_t i = 0; i < n; ++i) out += kPieces[rng() % kPieces.size()];
  return out;
}

// Write-then-read yields equal pairs, and writing twice is byte-identical.
TEST(WritePairsTest, RoundTripProperty) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<AugmentedPair> pairs;
    const std::size_t n = rng() % 6;
    for (std::size_t i = 0; i < n; ++i) {
      AugmentedPair p;
      p.id = "id" + std::to_string(i) + RandomText(rng);
      p.input = RandomText(rng);
      p.target = RandomText(rng);
      p.transform = static_cast<Transform>(rng() % 4);
      const std::size_t k = rng() % 3;
      for (std::size_t j = 0; j < k; ++j) {
        p.provenance.push_back({RandomText(rng), RandomText(rng), rng() % 100});
      }
      pairs.push_back(std::move(p));
    }
    TempDir dir;
    ASSERT_EQ(WritePairs(pairs, dir / "a.jsonl"), pairs.size());
    WritePairs(pairs, dir / "b.jsonl");
    EXPECT_EQ(ReadPairs(dir / "a.jsonl"), pairs);
    EXPECT_EQ(ReadText(dir / "a.jsonl"), ReadText(dir / "b.jsonl"));
  }
}

// Strict reading admits a record exactly when ValidateSample finds nothing.
TEST(ValidateSampleTest, AgreesWithStrictReader) {
  std::mt19937_64 rng(11);
  const std::string host = "Philip met Norton in Zoë's café.";
  const std::size_t len = utf8::Length(host);
  const utf8::CharIndex index(host);
  for (int trial = 0; trial < 300; ++trial) {
    Sample s;
    s.id = trial % 17 == 0 ? "" : "t" + std::to_string(trial);
    s.document = host;
    s.summary = "ok";
    const std::size_t n = rng() % 3;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t a = rng() % (len + 3);
      std::size_t b = a + rng() % 6;
      EntityMention m{a, b, "", "X"};
      if (a < b && b <= len) {
        m.text = std::string(index.Slice(a, b));
        if (rng() % 5 == 0) m.text += "!";
      }
      s.document_entities.push_back(m);
    }
    TempDir dir;
    WriteText(dir / "c.jsonl", SerializeSample(s) + "\n");
    bool admitted = true;
    try {
      ReadCorpus(dir / "c.jsonl", true);
    } catch (const CorpusError&) {
      admitted = false;
    }
    EXPECT_EQ(admitted, ValidateSample(s).empty()) << SerializeSample(s);
  }
}

TEST(TransformTest, NamesRoundTrip) {
  for (auto t : {Transform::kOriginal, Transform::kEntityReplace,
                 Transform::kCategoricalEntityReplace, Transform::kHypernymReplace}) {
    EXPECT_EQ(ParseTransform(TransformName(t)), t);
  }
  EXPECT_FALSE(ParseTransform("er"));
}

}  // namespace
}  // namespace cfaug
