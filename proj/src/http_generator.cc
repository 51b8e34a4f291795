// Copyright 2026 The slotaug Authors.
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

#include <algorithm>
#include <atomic>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "slotaug/generator.h"

namespace slotaug {
namespace {

using Json = nlohmann::ordered_json;

GenerationError malformed(const std::string &why) {
  return GenerationError(GenerationErrorKind::kMalformedResponse, why);
}

}  // namespace

std::string encode_generate_request(std::span<const Tokens> inputs,
                                    std::size_t num_return_sequences,
                                    std::size_t max_length,
                                    std::optional<std::uint64_t> seed) {
  Json body;
  body["inputs"] = Json::array();
  for (const Tokens &input : inputs) body["inputs"].push_back(join_tokens(input));
  body["num_return_sequences"] = num_return_sequences;
  body["max_length"] = max_length;
  body["seed"] = seed ? Json(*seed) : Json(nullptr);
  return body.dump();
}

std::vector<std::vector<std::string>> decode_generate_response(
    const std::string &body, std::size_t expected_inputs,
    std::size_t max_candidates) {
  Json parsed = Json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (parsed.is_discarded()) throw malformed("body is not JSON");
  if (!parsed.is_object() || !parsed.contains("outputs") ||
      !parsed["outputs"].is_array()) {
    throw malformed("missing \"outputs\" array");
  }
  const Json &outputs = parsed["outputs"];
  if (outputs.size() != expected_inputs) {
    throw malformed("expected " + std::to_string(expected_inputs) +
                    " outputs, got " + std::to_string(outputs.size()));
  }
  std::vector<std::vector<std::string>> result;
  result.reserve(outputs.size());
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    const Json &entry = outputs[i];
    if (!entry.is_array() || entry.empty() || entry.size() > max_candidates) {
      throw malformed("outputs[" + std::to_string(i) +
                      "] must hold 1.." + std::to_string(max_candidates) +
                      " strings");
    }
    std::vector<std::string> candidates;
    for (const Json &candidate : entry) {
      if (!candidate.is_string()) {
        throw malformed("outputs[" + std::to_string(i) + "] holds a non-string");
      }
      std::string text = candidate.get<std::string>();
      if (split_tokens(text).empty()) {
        throw malformed("outputs[" + std::to_string(i) + "] holds an empty string");
      }
      candidates.push_back(std::move(text));
    }
    result.push_back(std::move(candidates));
  }
  return result;
}

HttpGenerator::HttpGenerator(HttpGeneratorOptions options)
    : options_(std::move(options)) {
  const std::string &url = options_.endpoint;
  const std::string scheme = "http://";
  if (url.rfind(scheme, 0) != 0) {
    throw Error(ErrorCode::kInvalidConfig,
                "endpoint must start with http://, got '" + url + "'");
  }
  const std::size_t slash = url.find('/', scheme.size());
  host_ = url.substr(0, slash);
  std::string prefix = slash == std::string::npos ? "" : url.substr(slash);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  path_ = prefix + "/generate";
  if (host_.size() == scheme.size()) {
    throw Error(ErrorCode::kInvalidConfig, "endpoint has no host: '" + url + "'");
  }
  if (options_.max_parallel == 0) options_.max_parallel = 1;
}

std::string HttpGenerator::id() const { return "http:" + options_.endpoint; }

std::vector<GenerationCandidate> HttpGenerator::generate(
    const GenerationRequest &request) {
  validate_request(request);
  const Tokens inputs[] = {request.input_text};
  const std::string body = encode_generate_request(
      inputs, request.num_candidates, request.max_length, request.seed);

  GenerationError last(GenerationErrorKind::kBackendUnavailable, "no attempt");
  for (std::size_t attempt = 0; attempt <= options_.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(options_.backoff * (1LL << (attempt - 1)));
    }
    httplib::Client client(host_);
    client.set_connection_timeout(options_.timeout);
    client.set_read_timeout(options_.timeout);
    client.set_write_timeout(options_.timeout);
    auto response = client.Post(path_, body, "application/json");
    if (!response) {
      last = GenerationError(GenerationErrorKind::kBackendUnavailable,
                             host_ + path_ + ": " +
                                 httplib::to_string(response.error()));
      continue;
    }
    const int status = response->status;
    if (status == 200) {
      try {
        auto outputs = decode_generate_response(response->body, 1,
                                                request.num_candidates);
        std::vector<GenerationCandidate> candidates;
        for (const std::string &text : outputs[0]) {
          candidates.push_back({split_tokens(to_lower(text)), id()});
        }
        return candidates;
      } catch (const GenerationError &e) {
        last = e;
        continue;
      }
    }
    if (status >= 400 && status < 500) {
      throw GenerationError(GenerationErrorKind::kRequestRejected,
                            "status " + std::to_string(status) + ": " +
                                response->body);
    }
    last = GenerationError(
        status >= 500 ? GenerationErrorKind::kBackendUnavailable
                      : GenerationErrorKind::kMalformedResponse,
        "status " + std::to_string(status));
  }
  throw last;
}

std::vector<GenerationOutcome> HttpGenerator::generate_batch(
    std::span<const GenerationRequest> requests) {
  std::vector<GenerationOutcome> outcomes(requests.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < requests.size(); i = next++) {
      try {
        outcomes[i].candidates = generate(requests[i]);
      } catch (const GenerationError &e) {
        outcomes[i].error = e.kind();
        outcomes[i].error_message = e.what();
      } catch (const std::exception &e) {
        outcomes[i].error = GenerationErrorKind::kBackendUnavailable;
        outcomes[i].error_message = e.what();
      }
    }
  };
  const std::size_t workers = std::min(options_.max_parallel, requests.size());
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(worker);
  for (std::thread &t : threads) t.join();
  return outcomes;
}

}  // namespace slotaug
