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

#include <gtest/gtest.h>

#include <atomic>
#include <mutex>
#include <thread>

#include "httplib.h"
#include "json.hpp"

namespace cfaug {
namespace {

using nlohmann::json;

// In-process stand-in for the NLI service. Labels each pair "entailment"
// when the hypothesis starts with "yes", otherwise "neutral".
class MockService {
 public:
  MockService() {
    server_.Post("/v1/entail", [this](const httplib::Request& req, httplib::Response& res) {
      const int n = ++requests_;
      {
        std::lock_guard<std::mutex> lock(mu_);
        bodies_.push_back(req.body);
      }
      if (n <= fail_first_) {
        res.status = 503;
        return;
      }
      const json in = json::parse(req.body);
      json out;
      out["labels"] = json::array();
      out["probs"] = json::array();
      for (const auto& p : in.at("pairs")) {
        const std::string h = p.at("hypothesis");
        const bool yes = h.rfind("yes", 0) == 0;
        out["labels"].push_back(label_override_.empty() ? (yes ? "entailment" : "neutral")
                                                        : label_override_);
        out["probs"].push_back(yes ? json::array({0.9, 0.05, 0.05})
                                   : json::array({0.1, 0.8, 0.1}));
      }
      res.set_content(out.dump(), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~MockService() {
    server_.stop();
    thread_.join();
  }

  std::string endpoint() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1"; }
  int requests() const { return requests_; }
  std::vector<std::string> bodies() {
    std::lock_guard<std::mutex> lock(mu_);
    return bodies_;
  }

  int fail_first_ = 0;
  std::string label_override_;

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
  std::atomic<int> requests_{0};
  std::mutex mu_;
  std::vector<std::string> bodies_;
};

HttpBackendOptions Options(const std::string& endpoint) {
  HttpBackendOptions o;
  o.endpoint = endpoint;
  o.initial_backoff = std::chrono::milliseconds(5);
  o.timeout = std::chrono::milliseconds(2000);
  return o;
}

TEST(WireFormatTest, EncodeRequest) {
  const std::vector<PremiseHypothesis> pairs = {{"doc \"q\"", "h1"}, {"doc", "h2"}};
  EXPECT_EQ(EncodeEntailRequest(pairs),
            R"({"pairs":[{"premise":"doc \"q\"","hypothesis":"h1"},)"
            R"({"premise":"doc","hypothesis":"h2"}]})");
}

TEST(WireFormatTest, DecodeResponse) {
  const auto v = DecodeEntailResponse(
      R"({"labels":["entailment","CONTRADICTION"],"probs":[[0.7,0.2,0.1],[0.1,0.1,0.8]]})", 2);
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[0].label, EntailmentLabel::kEntailment);
  EXPECT_NEAR(*v[0].confidence, 0.7, 1e-12);
  EXPECT_EQ(v[1].label, EntailmentLabel::kContradiction);
  EXPECT_NEAR(*v[1].confidence, 0.8, 1e-12);
  EXPECT_FALSE(DecodeEntailResponse(R"({"labels":["neutral"]})", 1)[0].confidence);
}

TEST(WireFormatTest, MalformedResponses) {
  EXPECT_THROW(DecodeEntailResponse("not json", 1), BackendError);
  EXPECT_THROW(DecodeEntailResponse(R"({"labels":["maybe"]})", 1), BackendError);
  EXPECT_THROW(DecodeEntailResponse(R"({"labels":["neutral"]})", 2), BackendError);
  EXPECT_THROW(DecodeEntailResponse(R"({"labels":[1]})", 1), BackendError);
  EXPECT_THROW(DecodeEntailResponse(R"({"labels":["neutral"],"probs":[[1,0]]})", 1),
               BackendError);
}

TEST(HttpBackendTest, MapsLabels) {
  MockService service;
  HttpEntailmentBackend backend(Options(service.endpoint()));
  const std::vector<PremiseHypothesis> pairs = {{"d", "yes it is"}, {"d", "no"}};
  const auto v = backend.Classify(pairs);
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[0].label, EntailmentLabel::kEntailment);
  EXPECT_EQ(v[1].label, EntailmentLabel::kNeutral);
  EXPECT_EQ(service.requests(), 1);
  EXPECT_EQ(service.bodies()[0], EncodeEntailRequest(pairs));
}

TEST(HttpBackendTest, NonThreeWayLabelIsError) {
  MockService service;
  service.label_override_ = "maybe";
  HttpEntailmentBackend backend(Options(service.endpoint()));
  const std::vector<PremiseHypothesis> pairs = {{"d", "x"}};
  EXPECT_THROW(backend.Classify(pairs), BackendError);
}

TEST(HttpBackendTest, EmptyInputSendsNothing) {
  MockService service;
  HttpEntailmentBackend backend(Options(service.endpoint()));
  EXPECT_TRUE(backend.Classify({}).empty());
  EXPECT_EQ(service.requests(), 0);
  EXPECT_EQ(backend.requests_sent(), 0u);
}

TEST(HttpBackendTest, BatchesKeepOrder) {
  MockService service;
  auto opts = Options(service.endpoint());
  opts.batch_size = 3;
  opts.max_in_flight = 4;
  HttpEntailmentBackend backend(opts);
  std::vector<PremiseHypothesis> pairs;
  for (int i = 0; i < 20; ++i) pairs.push_back({"d", (i % 3 == 0 ? "yes " : "no ") + std::to_string(i)});
  const auto v = backend.Classify(pairs);
  ASSERT_EQ(v.size(), 20u);
  for (int i = 0; i < 20; ++i) {
    EXPECT_EQ(v[i].label, i % 3 == 0 ? EntailmentLabel::kEntailment : EntailmentLabel::kNeutral);
  }
  EXPECT_EQ(service.requests(), 7);
  for (const auto& body : service.bodies()) EXPECT_LE(json::parse(body)["pairs"].size(), 3u);
}

TEST(HttpBackendTest, RetriesTransientErrors) {
  MockService service;
  service.fail_first_ = 2;
  HttpEntailmentBackend backend(Options(service.endpoint()));
  const std::vector<PremiseHypothesis> pairs = {{"d", "yes"}};
  EXPECT_EQ(backend.Classify(pairs)[0].label, EntailmentLabel::kEntailment);
  EXPECT_EQ(service.requests(), 3);
  EXPECT_EQ(backend.requests_sent(), 3u);
}

TEST(HttpBackendTest, GivesUpAfterThreeAttempts) {
  MockService service;
  service.fail_first_ = 100;
  auto opts = Options(service.endpoint());
  opts.batch_size = 2;
  HttpEntailmentBackend backend(opts);
  const std::vector<PremiseHypothesis> pairs = {{"d", "a"}, {"d", "b"}, {"d", "c"}};
  try {
    backend.Classify(pairs);
    FAIL();
  } catch (const BackendError& e) {
    EXPECT_EQ(e.failed_pair(), 0u);
    EXPECT_NE(std::string(e.what()).find("HTTP 503"), std::string::npos);
  }
  EXPECT_EQ(service.requests(), 6);
}

TEST(HttpBackendTest, ServiceDown) {
  int port = 0;
  {
    httplib::Server probe;
    port = probe.bind_to_any_port("127.0.0.1");
  }
  HttpEntailmentBackend backend(Options("http://127.0.0.1:" + std::to_string(port)));
  const std::vector<PremiseHypothesis> pairs = {{"d", "a"}};
  EXPECT_THROW(backend.Classify(pairs), BackendError);
  EXPECT_EQ(backend.requests_sent(), 3u);
}

TEST(HttpBackendTest, RejectsOtherSchemes) {
  EXPECT_THROW(HttpEntailmentBackend(Options("https://example.com")), std::invalid_argument);
  EXPECT_THROW(HttpEntailmentBackend(Options("localhost:8000")), std::invalid_argument);
}

}  // namespace
}  // namespace cfaug
