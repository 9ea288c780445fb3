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

#include "cfaug/nli_http.h"

#include <algorithm>
#include <optional>
#include <thread>

#include "cfaug/parallel.h"

#include "httplib.h"
#include "json.hpp"

namespace cfaug {
namespace {

using nlohmann::json;

bool Transient(int status) { return status == 429 || status >= 500; }

}  // namespace

std::string EncodeEntailRequest(std::span<const PremiseHypothesis> pairs) {
  nlohmann::ordered_json body;
  body["pairs"] = nlohmann::ordered_json::array();
  for (const auto& p : pairs) {
    nlohmann::ordered_json item;
    item["premise"] = p.premise;
    item["hypothesis"] = p.hypothesis;
    body["pairs"].push_back(std::move(item));
  }
  return body.dump(-1, ' ', false, nlohmann::ordered_json::error_handler_t::replace);
}

std::vector<EntailmentVerdict> DecodeEntailResponse(std::string_view body,
                                                    std::size_t expected) {
  json j;
  try {
    j = json::parse(body);
  } catch (const json::exception& e) {
    throw BackendError(std::string("malformed response: ") + e.what());
  }
  if (!j.is_object() || !j.contains("labels") || !j["labels"].is_array()) {
    throw BackendError("malformed response: missing \"labels\" array");
  }
  const json& labels = j["labels"];
  if (labels.size() != expected) {
    throw BackendError("malformed response: " + std::to_string(labels.size()) +
                       " labels for " + std::to_string(expected) + " pairs");
  }
  const json* probs = nullptr;
  if (auto it = j.find("probs"); it != j.end() && it->is_array()) {
    if (it->size() != expected) {
      throw BackendError("malformed response: probs length does not match labels");
    }
    probs = &*it;
  }
  std::vector<EntailmentVerdict> out;
  out.reserve(expected);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!labels[i].is_string()) throw BackendError("malformed response: non-string label");
    const std::string name = labels[i].get<std::string>();
    auto label = ParseEntailmentLabel(name);
    if (!label) {
      throw BackendError("malformed response: label \"" + name +
                         "\" is not entailment/neutral/contradiction");
    }
    EntailmentVerdict v{*label, std::nullopt};
    if (probs != nullptr) {
      const json& row = (*probs)[i];
      const auto k = static_cast<std::size_t>(*label);
      if (!row.is_array() || row.size() != 3 || !row[k].is_number()) {
        throw BackendError("malformed response: probs row is not a 3-vector");
      }
      v.confidence = row[k].get<double>();
    }
    out.push_back(v);
  }
  return out;
}

HttpEntailmentBackend::HttpEntailmentBackend(HttpBackendOptions options)
    : options_(std::move(options)) {
  constexpr std::string_view kScheme = "http://";
  if (!std::string_view(options_.endpoint).starts_with(kScheme)) {
    throw std::invalid_argument("NLI endpoint must start with http://: " + options_.endpoint);
  }
  const std::size_t slash = options_.endpoint.find('/', kScheme.size());
  host_ = options_.endpoint.substr(0, slash);
  std::string prefix = slash == std::string::npos ? "" : options_.endpoint.substr(slash);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  path_ = prefix + "/entail";
  options_.batch_size = std::max<std::size_t>(options_.batch_size, 1);
  options_.max_in_flight = std::max<std::size_t>(options_.max_in_flight, 1);
  options_.attempts = std::max(options_.attempts, 1);
}

std::vector<EntailmentVerdict> HttpEntailmentBackend::SendBatch(
    std::span<const PremiseHypothesis> batch) {
  httplib::Client client(host_);
  const auto timeout = options_.timeout;
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  const std::string body = EncodeEntailRequest(batch);
  std::string last_error;
  auto backoff = options_.initial_backoff;
  for (int attempt = 1; attempt <= options_.attempts; ++attempt) {
    ++requests_sent_;
    auto res = client.Post(path_, body, "application/json");
    if (res && res->status == 200) return DecodeEntailResponse(res->body, batch.size());
    if (res) {
      last_error = "HTTP " + std::to_string(res->status);
      if (!Transient(res->status)) break;
    } else {
      last_error = httplib::to_string(res.error());
    }
    if (attempt < options_.attempts) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
  }
  throw BackendError("NLI backend " + host_ + path_ + " failed: " + last_error);
}

std::vector<EntailmentVerdict> HttpEntailmentBackend::Classify(
    std::span<const PremiseHypothesis> pairs) {
  if (pairs.empty()) return {};
  const std::size_t batch = options_.batch_size;
  std::vector<std::size_t> starts;
  for (std::size_t b = 0; b < pairs.size(); b += batch) starts.push_back(b);
  const auto results = ParallelMap(
      std::span<const std::size_t>(starts), static_cast<int>(options_.max_in_flight),
      [&](std::size_t begin) {
        try {
          return SendBatch(pairs.subspan(begin, std::min(batch, pairs.size() - begin)));
        } catch (const BackendError& e) {
          throw BackendError(e.what(), begin);
        }
      });
  std::vector<EntailmentVerdict> out;
  out.reserve(pairs.size());
  for (auto& r : results) out.insert(out.end(), r.begin(), r.end());
  return out;
}

}  // namespace cfaug
