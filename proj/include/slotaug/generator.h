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

#ifndef SLOTAUG_GENERATOR_H_
#define SLOTAUG_GENERATOR_H_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "slotaug/corpus.h"
#include "slotaug/transform.h"

namespace slotaug {

struct GenerationRequest {
  Tokens input_text;
  std::size_t num_candidates = 1;
  std::size_t max_length = 64;
  std::optional<std::uint64_t> seed;
  // Tokens of the utterance the input was derived from. Local backends may
  // use it; it never crosses the wire.
  Tokens source_hint;
};

struct GenerationCandidate {
  Tokens tokens;
  std::string backend_id;
};

enum class GenerationErrorKind {
  kBackendUnavailable,
  kMalformedResponse,
  kRequestRejected,
  kUnknownSlotType,
  kInvalidRequest,
};

const char *generation_error_name(GenerationErrorKind kind);

class GenerationError : public std::runtime_error {
 public:
  GenerationError(GenerationErrorKind kind, const std::string &message);
  GenerationErrorKind kind() const { return kind_; }

 private:
  GenerationErrorKind kind_;
};

// Result for one request of a batch.
struct GenerationOutcome {
  std::vector<GenerationCandidate> candidates;
  std::optional<GenerationErrorKind> error;
  std::string error_message;

  bool ok() const { return !error.has_value(); }
};

// Throws kInvalidRequest on an empty input or a zero candidate/length count.
void validate_request(const GenerationRequest &request);

// A text generation backend. Implementations must be callable from several
// threads at once.
class Generator {
 public:
  virtual ~Generator() = default;

  virtual std::string id() const = 0;

  // 1..num_candidates candidates in backend order. Throws GenerationError.
  virtual std::vector<GenerationCandidate> generate(
      const GenerationRequest &request) = 0;

  // One outcome per request, in request order. A failing request never
  // aborts the others.
  virtual std::vector<GenerationOutcome> generate_batch(
      std::span<const GenerationRequest> requests);
};

// Returns the source hint when present, otherwise the input text.
class EchoGenerator : public Generator {
 public:
  std::string id() const override { return "echo"; }
  std::vector<GenerationCandidate> generate(
      const GenerationRequest &request) override;
};

// Deterministic stand-in for a finetuned model.
//
// Value-mode inputs ("... _ <description> _ ...") get the region replaced by
// a lexicon value of the described type. With a request seed s, candidate k
// takes value (s + k) mod |values|; without one, an internal round-robin
// counter per type is used.
//
// Context-mode inputs ("<intent> ( type = value ; ... )") are rendered
// through a template whose "<slot_type>" placeholders match the frame's
// types exactly, chosen round-robin among matching templates. Without a
// matching template the source hint is echoed, or, lacking one, the values
// are emitted in frame order.
class MockLexiconGenerator : public Generator {
 public:
  using Lexicon = std::map<std::string, std::vector<std::string>>;

  // Throws kInvalidArgument when a slot type has no values.
  MockLexiconGenerator(Lexicon lexicon, std::vector<std::string> templates = {},
                       SlotDescriptionMap descriptions = {});

  std::string id() const override { return "mock-lexicon"; }
  std::vector<GenerationCandidate> generate(
      const GenerationRequest &request) override;

  // "slot_type<TAB>value" lines.
  static Lexicon load_lexicon(const std::filesystem::path &path);
  static Lexicon lexicon_from_dictionary(const SlotDictionary &dict);
  // One template per non-empty line.
  static std::vector<std::string> load_templates(
      const std::filesystem::path &path);

 private:
  struct TemplateSlot {
    Tokens tokens;                   // literal tokens and placeholders
    std::vector<std::string> types;  // sorted placeholder types
  };

  std::vector<GenerationCandidate> generate_value(const GenerationRequest &req,
                                                  std::size_t open,
                                                  std::size_t close);
  std::vector<GenerationCandidate> generate_context(
      const GenerationRequest &req);
  std::size_t next_index(const std::string &key, std::size_t k,
                         const GenerationRequest &req, std::size_t modulus);
  // Slot type whose description equals the given tokens.
  std::optional<std::string> type_for_description(const Tokens &description,
                                                  bool from_templates) const;

  Lexicon lexicon_;
  std::map<std::string, std::vector<Tokens>> lexicon_tokens_;
  std::vector<TemplateSlot> templates_;
  SlotDescriptionMap descriptions_;
  std::mutex mutex_;
  std::map<std::string, std::size_t> counters_;
};

struct HttpGeneratorOptions {
  // Base URL, e.g. "http://127.0.0.1:8000" or "http://host:8000/prefix".
  std::string endpoint;
  std::chrono::milliseconds timeout{30000};
  std::size_t max_parallel = 4;
  std::size_t max_retries = 3;
  std::chrono::milliseconds backoff{100};
};

// Client for the generation service wire protocol:
//
//   POST <prefix>/generate
//   {"inputs": [str], "num_return_sequences": int, "max_length": int,
//    "seed": int|null}
//   -> 200 {"outputs": [[str, ...], ...]}
//
// One input per POST. Connection failures, 5xx and malformed bodies are
// retried with exponential backoff; 4xx fails immediately.
class HttpGenerator : public Generator {
 public:
  explicit HttpGenerator(HttpGeneratorOptions options);

  std::string id() const override;
  std::vector<GenerationCandidate> generate(
      const GenerationRequest &request) override;
  // Runs at most max_parallel requests at a time.
  std::vector<GenerationOutcome> generate_batch(
      std::span<const GenerationRequest> requests) override;

  const HttpGeneratorOptions &options() const { return options_; }

 private:
  HttpGeneratorOptions options_;
  std::string host_;  // scheme://host:port
  std::string path_;  // prefix + "/generate"
};

// Wire helpers, exposed for tests and for servers written against the same
// protocol.
std::string encode_generate_request(std::span<const Tokens> inputs,
                                    std::size_t num_return_sequences,
                                    std::size_t max_length,
                                    std::optional<std::uint64_t> seed);

// outputs[i] holds the candidate strings of inputs[i]. Throws
// GenerationError(kMalformedResponse) unless there are exactly
// expected_inputs entries, each with 1..max_candidates non-empty strings.
std::vector<std::vector<std::string>> decode_generate_response(
    const std::string &body, std::size_t expected_inputs,
    std::size_t max_candidates);

}  // namespace slotaug

#endif  // SLOTAUG_GENERATOR_H_
