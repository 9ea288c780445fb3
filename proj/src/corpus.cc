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

#include <algorithm>
#include <array>

#include "cfaug/utf8.h"

namespace cfaug {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr std::array<std::string_view, 4> kTransformNames = {
    "ORIGINAL", "ER", "CAT_ER", "WN_HYPER"};

const json& Require(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw SchemaError(std::string("missing field \"") + key + "\"");
  }
  return *it;
}

std::string RequireString(const json& obj, const char* key,
                          const std::string& where) {
  const json& v = Require(obj, key);
  if (!v.is_string()) {
    throw SchemaError(where + key + ": expected string");
  }
  return v.get<std::string>();
}

std::size_t RequireOffset(const json& obj, const char* key,
                          const std::string& where) {
  const json& v = Require(obj, key);
  if (!v.is_number_unsigned() &&
      !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw SchemaError(where + key + ": expected non-negative integer");
  }
  return v.get<std::size_t>();
}

std::vector<EntityMention> ParseMentions(const json& obj, const char* key) {
  std::vector<EntityMention> out;
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return out;
  if (!it->is_array()) {
    throw SchemaError(std::string(key) + ": expected array");
  }
  for (std::size_t i = 0; i < it->size(); ++i) {
    const json& m = (*it)[i];
    const std::string where = std::string(key) + "[" + std::to_string(i) + "].";
    if (!m.is_object()) throw SchemaError(where + " expected object");
    EntityMention em;
    em.start = RequireOffset(m, "start", where);
    em.end = RequireOffset(m, "end", where);
    em.text = RequireString(m, "text", where);
    em.category = RequireString(m, "category", where);
    out.push_back(std::move(em));
  }
  return out;
}

// Checks span rules shared by mentions and noun tokens.
template <typename Span>
void CheckSpans(const std::vector<Span>& spans, const utf8::CharIndex& index,
                const std::string& field, bool check_text,
                std::vector<std::string>& violations) {
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const Span& sp = spans[i];
    const std::string where = field + "[" + std::to_string(i) + "]: ";
    if (sp.start >= sp.end || sp.end > index.chars()) {
      violations.push_back(where + "span out of bounds");
      continue;
    }
    if (check_text && index.Slice(sp.start, sp.end) != sp.text) {
      violations.push_back(where + "text/span mismatch");
    }
  }
  for (std::size_t i = 1; i < spans.size(); ++i) {
    if (spans[i].start < spans[i - 1].start) {
      violations.push_back(field + ": not sorted at index " + std::to_string(i));
    } else if (spans[i].start < spans[i - 1].end) {
      violations.push_back(field + ": overlap at index " + std::to_string(i));
    }
  }
}

ordered_json MentionsToJson(const std::vector<EntityMention>& mentions) {
  ordered_json arr = ordered_json::array();
  for (const auto& m : mentions) {
    ordered_json o;
    o["start"] = m.start;
    o["end"] = m.end;
    o["text"] = m.text;
    o["category"] = m.category;
    arr.push_back(std::move(o));
  }
  return arr;
}

std::string Dump(const ordered_json& j) {
  return j.dump(-1, ' ', false, ordered_json::error_handler_t::strict);
}

}  // namespace

std::string_view TransformName(Transform t) {
  return kTransformNames[static_cast<std::size_t>(t)];
}

std::optional<Transform> ParseTransform(std::string_view name) {
  for (std::size_t i = 0; i < kTransformNames.size(); ++i) {
    if (kTransformNames[i] == name) return static_cast<Transform>(i);
  }
  return std::nullopt;
}

std::vector<std::string> ValidateSample(const Sample& s) {
  std::vector<std::string> violations;
  if (s.id.empty()) violations.push_back("id: empty");
  if (!utf8::IsValid(s.document)) {
    violations.push_back("document: invalid UTF-8");
    return violations;
  }
  if (!utf8::IsValid(s.summary)) {
    violations.push_back("summary: invalid UTF-8");
    return violations;
  }
  const utf8::CharIndex doc(s.document);
  const utf8::CharIndex sum(s.summary);
  CheckSpans(s.document_entities, doc, "document_entities", true, violations);
  CheckSpans(s.summary_entities, sum, "summary_entities", true, violations);
  if (s.summary_noun_tokens) {
    CheckSpans(*s.summary_noun_tokens, sum, "summary_noun_tokens", true,
               violations);
  }
  return violations;
}

Sample ParseSample(std::string_view line) {
  const json obj = json::parse(line);
  if (!obj.is_object()) throw SchemaError("record is not a JSON object");
  Sample s;
  s.id = RequireString(obj, "id", "");
  s.document = RequireString(obj, "document", "");
  s.summary = RequireString(obj, "summary", "");
  s.document_entities = ParseMentions(obj, "document_entities");
  s.summary_entities = ParseMentions(obj, "summary_entities");
  if (auto it = obj.find("summary_noun_tokens");
      it != obj.end() && !it->is_null()) {
    if (!it->is_array()) {
      throw SchemaError("summary_noun_tokens: expected array");
    }
    const utf8::CharIndex sum(s.summary);
    std::vector<TokenSpan> tokens;
    for (std::size_t i = 0; i < it->size(); ++i) {
      const json& t = (*it)[i];
      const std::string where = "summary_noun_tokens[" + std::to_string(i) + "].";
      if (!t.is_object()) throw SchemaError(where + " expected object");
      TokenSpan span;
      span.start = RequireOffset(t, "start", where);
      span.end = RequireOffset(t, "end", where);
      if (t.contains("text")) {
        span.text = RequireString(t, "text", where);
      } else if (span.start < span.end && span.end <= sum.chars()) {
        span.text = std::string(sum.Slice(span.start, span.end));
      }
      tokens.push_back(std::move(span));
    }
    s.summary_noun_tokens = std::move(tokens);
  }
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    static constexpr std::array<std::string_view, 6> kKnown = {
        "id", "document", "summary", "document_entities", "summary_entities",
        "summary_noun_tokens"};
    if (std::find(kKnown.begin(), kKnown.end(), it.key()) == kKnown.end()) {
      s.extra[it.key()] = it.value();
    }
  }
  return s;
}

nlohmann::ordered_json SampleToJson(const Sample& s) {
  ordered_json o;
  o["id"] = s.id;
  o["document"] = s.document;
  o["summary"] = s.summary;
  o["document_entities"] = MentionsToJson(s.document_entities);
  o["summary_entities"] = MentionsToJson(s.summary_entities);
  if (s.summary_noun_tokens) {
    ordered_json arr = ordered_json::array();
    for (const auto& t : *s.summary_noun_tokens) {
      ordered_json tj;
      tj["start"] = t.start;
      tj["end"] = t.end;
      tj["text"] = t.text;
      arr.push_back(std::move(tj));
    }
    o["summary_noun_tokens"] = std::move(arr);
  }
  for (auto it = s.extra.begin(); it != s.extra.end(); ++it) {
    o[it.key()] = ordered_json::parse(it.value().dump());
  }
  return o;
}

std::string SerializeSample(const Sample& s) { return Dump(SampleToJson(s)); }

nlohmann::ordered_json PairToJson(const AugmentedPair& p) {
  ordered_json o;
  o["id"] = p.id;
  o["input"] = p.input;
  o["target"] = p.target;
  o["transform"] = TransformName(p.transform);
  ordered_json prov = ordered_json::array();
  for (const auto& r : p.provenance) {
    ordered_json rj;
    rj["orig"] = r.original;
    rj["repl"] = r.replacement;
    rj["start"] = r.start;
    prov.push_back(std::move(rj));
  }
  o["provenance"] = std::move(prov);
  return o;
}

std::string SerializePair(const AugmentedPair& p) { return Dump(PairToJson(p)); }

AugmentedPair ParsePair(std::string_view line) {
  const json obj = json::parse(line);
  if (!obj.is_object()) throw SchemaError("record is not a JSON object");
  AugmentedPair p;
  p.id = RequireString(obj, "id", "");
  p.input = RequireString(obj, "input", "");
  p.target = RequireString(obj, "target", "");
  const std::string name = RequireString(obj, "transform", "");
  auto t = ParseTransform(name);
  if (!t) throw SchemaError("transform: unknown value \"" + name + "\"");
  p.transform = *t;
  for (const json& r : Require(obj, "provenance")) {
    Provenance pr;
    pr.original = RequireString(r, "orig", "provenance.");
    pr.replacement = RequireString(r, "repl", "provenance.");
    pr.start = RequireOffset(r, "start", "provenance.");
    p.provenance.push_back(std::move(pr));
  }
  return p;
}

CorpusReader::CorpusReader(const std::filesystem::path& path, bool strict)
    : in_(path), strict_(strict) {
  if (!in_) throw std::runtime_error("cannot open " + path.string());
}

void CorpusReader::Reject(std::size_t line, const std::string& what) {
  if (strict_) throw CorpusError(line, what);
  ++stats_.skipped;
  stats_.errors.push_back("line " + std::to_string(line) + ": " + what);
}

std::optional<Sample> CorpusReader::Next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_no_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    ++stats_.lines;
    Sample s;
    try {
      s = ParseSample(line);
    } catch (const nlohmann::json::exception& e) {
      Reject(line_no_, std::string("malformed JSON: ") + e.what());
      continue;
    } catch (const SchemaError& e) {
      Reject(line_no_, e.what());
      continue;
    }
    auto violations = ValidateSample(s);
    if (!violations.empty()) {
      std::string joined;
      for (const auto& v : violations) joined += (joined.empty() ? "" : "; ") + v;
      Reject(line_no_, joined);
      continue;
    }
    if (!seen_ids_.insert(s.id).second) {
      Reject(line_no_, "duplicate id \"" + s.id + "\"");
      continue;
    }
    ++stats_.accepted;
    return s;
  }
  return std::nullopt;
}

std::vector<Sample> ReadCorpus(const std::filesystem::path& path, bool strict,
                               ReadStats* stats) {
  CorpusReader reader(path, strict);
  std::vector<Sample> out;
  while (auto s = reader.Next()) out.push_back(std::move(*s));
  if (stats) *stats = reader.stats();
  return out;
}

JsonlWriter::JsonlWriter(const std::filesystem::path& path)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
  if (!out_) throw std::runtime_error("cannot open " + path.string() + " for writing");
}

void JsonlWriter::Write(std::string_view line) {
  out_.write(line.data(), static_cast<std::streamsize>(line.size()));
  out_.put('\n');
  if (!out_) throw std::runtime_error("write failed: " + path_.string());
  ++count_;
}

void JsonlWriter::Close() {
  out_.close();
  if (out_.fail()) throw std::runtime_error("close failed: " + path_.string());
}

std::size_t WritePairs(const std::vector<AugmentedPair>& pairs,
                       const std::filesystem::path& path) {
  JsonlWriter w(path);
  for (const auto& p : pairs) w.Write(SerializePair(p));
  w.Close();
  return w.count();
}

std::vector<AugmentedPair> ReadPairs(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<AugmentedPair> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    try {
      out.push_back(ParsePair(line));
    } catch (const nlohmann::json::exception& e) {
      throw CorpusError(n, std::string("malformed JSON: ") + e.what());
    } catch (const SchemaError& e) {
      throw CorpusError(n, e.what());
    }
  }
  return out;
}

std::size_t WriteCorpus(const std::vector<Sample>& samples,
                        const std::filesystem::path& path) {
  JsonlWriter w(path);
  for (const auto& s : samples) w.Write(SerializeSample(s));
  w.Close();
  return w.count();
}

}  // namespace cfaug
