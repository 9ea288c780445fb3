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

#ifndef CFAUG_NLI_HTTP_H_
#define CFAUG_NLI_HTTP_H_

#include <atomic>
#include <chrono>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cfaug/metrics.h"

namespace cfaug {

// Client for the NLI service wire protocol:
//
//   POST {endpoint}/entail
//   {"pairs":[{"premise":"...","hypothesis":"..."}, ...]}
//   -> {"labels":["entailment"|"neutral"|"contradiction", ...],
//       "probs":[[e,n,c], ...]}
struct HttpBackendOptions {
  std::string endpoint;  // http://host:port[/prefix]
  std::size_t batch_size = 32;
  std::size_t max_in_flight = 4;
  int attempts = 3;
  std::chrono::milliseconds initial_backoff{200};
  std::chrono::milliseconds timeout{30000};
};

std::string EncodeEntailRequest(std::span<const PremiseHypothesis> pairs);

// Throws BackendError on malformed JSON, a length mismatch, or a label
// outside the three-way set.
std::vector<EntailmentVerdict> DecodeEntailResponse(std::string_view body,
                                                    std::size_t expected);

class HttpEntailmentBackend : public EntailmentBackend {
 public:
  // Throws std::invalid_argument for an endpoint that is not http://.
  explicit HttpEntailmentBackend(HttpBackendOptions options);

  // Sends batches of at most batch_size pairs, at most max_in_flight at a
  // time, retrying connection failures and 429/5xx with exponential
  // backoff. No request is sent for an empty input.
  std::vector<EntailmentVerdict> Classify(std::span<const PremiseHypothesis> pairs) override;
  std::string name() const override { return "http:" + options_.endpoint; }

  // POSTs issued so far, retries included.
  std::size_t requests_sent() const { return requests_sent_.load(); }

 private:
  std::vector<EntailmentVerdict> SendBatch(std::span<const PremiseHypothesis> batch);

  HttpBackendOptions options_;
  std::string host_;  // scheme://host:port
  std::string path_;  // prefix + "/entail"
  std::atomic<std::size_t> requests_sent_{0};
};

}  // namespace cfaug

#endif  // CFAUG_NLI_HTTP_H_
