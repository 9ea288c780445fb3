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

#include "cfaug/wordnet.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>

#include "cfaug/text.h"

namespace cfaug {
namespace {

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw WordNetError("cannot open " + path.string());
  return std::string(std::istreambuf_iterator<char>(in), {});
}

// Splits one record into space-separated fields.
class Fields {
 public:
  explicit Fields(std::string_view line) {
    std::size_t pos = 0;
    while (pos < line.size()) {
      while (pos < line.size() && line[pos] == ' ') ++pos;
      if (pos >= line.size()) break;
      std::size_t end = line.find(' ', pos);
      if (end == std::string_view::npos) end = line.size();
      fields_.push_back(line.substr(pos, end - pos));
      pos = end;
    }
  }

  std::size_t size() const { return fields_.size(); }

  std::string_view at(std::size_t i, const char* what) const {
    if (i >= fields_.size()) {
      throw std::invalid_argument(std::string("record truncated before ") + what);
    }
    return fields_[i];
  }

  std::uint32_t Number(std::size_t i, const char* what, int base = 10) const {
    std::string_view f = at(i, what);
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v, base);
    if (ec != std::errc() || ptr != f.data() + f.size()) {
      throw std::invalid_argument(std::string("bad ") + what + " \"" +
                                  std::string(f) + "\"");
    }
    return v;
  }

 private:
  std::vector<std::string_view> fields_;
};

template <typename Fn>
void ForEachRecord(std::string_view text, const std::string& file, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.starts_with("  ")) continue;
    try {
      fn(line);
    } catch (const std::invalid_argument& e) {
      throw WordNetError(file + ":" + std::to_string(line_no) +
                         ": unparseable record: " + e.what());
    }
  }
}

std::string Underscores(std::string_view s) {
  std::string out(s);
  std::replace(out.begin(), out.end(), '_', ' ');
  return out;
}

std::string OffsetString(SynsetOffset o) {
  std::string s = std::to_string(o.value);
  return std::string(8 - std::min<std::size_t>(8, s.size()), '0') + s;
}

}  // namespace

std::string SynsetGraph::NormalizeLemma(std::string_view lemma) {
  return text::AsciiLower(Underscores(lemma));
}

SynsetGraph SynsetGraph::Load(const std::filesystem::path& index_path,
                              const std::filesystem::path& data_path) {
  return Parse(ReadFile(index_path), ReadFile(data_path));
}

SynsetGraph SynsetGraph::LoadDirectory(const std::filesystem::path& dir) {
  return Load(dir / "index.noun", dir / "data.noun");
}

SynsetGraph SynsetGraph::Parse(std::string_view index_text,
                               std::string_view data_text) {
  SynsetGraph g;
  g.synsets_.reserve(90000);
  g.lemma_index_.reserve(120000);

  // data.noun: offset lex_filenum ss_type w_cnt {word lex_id} p_cnt
  //            {symbol offset pos source/target} | gloss
  ForEachRecord(data_text, "data.noun", [&](std::string_view line) {
    const std::size_t bar = line.find(" | ");
    const Fields f(bar == std::string_view::npos ? line : line.substr(0, bar));
    const SynsetOffset offset{f.Number(0, "synset offset")};
    f.Number(1, "lex_filenum");
    if (f.at(2, "ss_type") != "n") {
      throw std::invalid_argument("ss_type is not n");
    }
    const std::uint32_t words = f.Number(3, "w_cnt", 16);
    if (words == 0) throw std::invalid_argument("w_cnt is zero");
    Synset synset;
    std::size_t i = 4;
    for (std::uint32_t w = 0; w < words; ++w, i += 2) {
      synset.lemmas.push_back(Underscores(f.at(i, "word")));
      f.Number(i + 1, "lex_id", 16);
    }
    const std::uint32_t pointers = f.Number(i++, "p_cnt");
    for (std::uint32_t p = 0; p < pointers; ++p, i += 4) {
      const std::string_view symbol = f.at(i, "pointer symbol");
      const SynsetOffset target{f.Number(i + 1, "pointer offset")};
      const std::string_view pos = f.at(i + 2, "pointer pos");
      f.Number(i + 3, "source/target", 16);
      if ((symbol == "@" || symbol == "@i") && pos == "n") {
        synset.hypernyms.push_back(target);
      }
    }
    if (!g.synsets_.emplace(offset, std::move(synset)).second) {
      throw std::invalid_argument("duplicate synset offset " +
                                  OffsetString(offset));
    }
  });

  // index.noun: lemma pos synset_cnt p_cnt {ptr_symbol} sense_cnt
  //             tagsense_cnt {synset_offset}
  ForEachRecord(index_text, "index.noun", [&](std::string_view line) {
    const Fields f(line);
    const std::string lemma = NormalizeLemma(f.at(0, "lemma"));
    if (f.at(1, "pos") != "n") throw std::invalid_argument("pos is not n");
    const std::uint32_t synset_cnt = f.Number(2, "synset_cnt");
    const std::uint32_t p_cnt = f.Number(3, "p_cnt");
    const std::size_t first = 4 + p_cnt + 2;
    f.Number(4 + p_cnt, "sense_cnt");
    f.Number(5 + p_cnt, "tagsense_cnt");
    if (f.size() != first + synset_cnt) {
      throw std::invalid_argument("synset_cnt does not match offset list");
    }
    std::vector<SynsetOffset> senses;
    senses.reserve(synset_cnt);
    for (std::size_t i = first; i < f.size(); ++i) {
      const SynsetOffset o{f.Number(i, "synset offset")};
      auto it = g.synsets_.find(o);
      if (it == g.synsets_.end()) {
        throw std::invalid_argument("dangling synset offset " + OffsetString(o));
      }
      const auto& lemmas = it->second.lemmas;
      if (std::none_of(lemmas.begin(), lemmas.end(), [&](const std::string& l) {
            return text::AsciiLower(l) == lemma;
          })) {
        throw std::invalid_argument("lemma \"" + lemma +
                                    "\" not in synset " + OffsetString(o));
      }
      senses.push_back(o);
    }
    if (!g.lemma_index_.emplace(lemma, std::move(senses)).second) {
      throw std::invalid_argument("duplicate lemma \"" + lemma + "\"");
    }
  });

  for (const auto& [offset, synset] : g.synsets_) {
    for (SynsetOffset h : synset.hypernyms) {
      if (!g.synsets_.contains(h)) {
        throw WordNetError("data.noun: dangling hypernym pointer " +
                           OffsetString(offset) + " -> " + OffsetString(h));
      }
    }
  }
  g.TopologicalOrder();
  return g;
}

const Synset* SynsetGraph::Find(SynsetOffset offset) const {
  auto it = synsets_.find(offset);
  return it == synsets_.end() ? nullptr : &it->second;
}

const std::vector<SynsetOffset>* SynsetGraph::Senses(
    std::string_view lemma) const {
  auto it = lemma_index_.find(NormalizeLemma(lemma));
  return it == lemma_index_.end() ? nullptr : &it->second;
}

std::optional<std::string> SynsetGraph::HypernymOf(
    std::string_view lemma) const {
  const auto* senses = Senses(lemma);
  if (senses == nullptr || senses->empty()) return std::nullopt;
  const Synset* first = Find(senses->front());
  if (first == nullptr || first->hypernyms.empty()) return std::nullopt;
  const Synset* parent = Find(first->hypernyms.front());
  if (parent == nullptr) return std::nullopt;
  return parent->lemmas.front();
}

bool SynsetGraph::IsNoun(std::string_view token) const {
  if (token.empty()) return false;
  return lemma_index_.contains(NormalizeLemma(token));
}

std::vector<SynsetOffset> SynsetGraph::TopologicalOrder() const {
  // Kahn's algorithm on synset -> hypernym edges, seeded in offset order.
  std::unordered_map<SynsetOffset, std::uint32_t, SynsetOffsetHash> indegree;
  indegree.reserve(synsets_.size());
  for (const auto& [offset, synset] : synsets_) {
    indegree.try_emplace(offset, 0);
    for (SynsetOffset h : synset.hypernyms) ++indegree[h];
  }
  std::vector<SynsetOffset> ready;
  for (const auto& [offset, deg] : indegree) {
    if (deg == 0) ready.push_back(offset);
  }
  std::sort(ready.begin(), ready.end(), std::greater<>());
  std::vector<SynsetOffset> order;
  order.reserve(synsets_.size());
  while (!ready.empty()) {
    const SynsetOffset node = ready.back();
    ready.pop_back();
    order.push_back(node);
    for (SynsetOffset h : synsets_.at(node).hypernyms) {
      if (--indegree[h] == 0) ready.push_back(h);
    }
  }
  if (order.size() != synsets_.size()) {
    SynsetOffset stuck{0xFFFFFFFFu};
    for (const auto& [offset, deg] : indegree) {
      if (deg > 0) stuck = std::min(stuck, offset);
    }
    throw WordNetError("data.noun: hypernym cycle detected through synset " +
                       OffsetString(stuck));
  }
  return order;
}

}  // namespace cfaug
