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

#include "slotaug/generator.h"

#include <algorithm>
#include <fstream>

namespace slotaug {
namespace {

Tokens truncate(Tokens tokens, std::size_t max_length) {
  if (tokens.size() > max_length) tokens.resize(max_length);
  return tokens;
}

bool is_placeholder(const std::string &token) {
  return token.size() > 2 && token.front() == '<' && token.back() == '>';
}

std::string placeholder_type(const std::string &token) {
  return token.substr(1, token.size() - 2);
}

}  // namespace

const char *generation_error_name(GenerationErrorKind kind) {
  switch (kind) {
    case GenerationErrorKind::kBackendUnavailable: return "BackendUnavailable";
    case GenerationErrorKind::kMalformedResponse: return "MalformedResponse";
    case GenerationErrorKind::kRequestRejected: return "RequestRejected";
    case GenerationErrorKind::kUnknownSlotType: return "UnknownSlotType";
    case GenerationErrorKind::kInvalidRequest: return "InvalidRequest";
  }
  return "Unknown";
}

GenerationError::GenerationError(GenerationErrorKind kind,
                                 const std::string &message)
    : std::runtime_error(std::string(generation_error_name(kind)) + ": " +
                         message),
      kind_(kind) {}

void validate_request(const GenerationRequest &request) {
  if (request.input_text.empty()) {
    throw GenerationError(GenerationErrorKind::kInvalidRequest, "empty input");
  }
  if (request.num_candidates == 0 || request.max_length == 0) {
    throw GenerationError(GenerationErrorKind::kInvalidRequest,
                          "num_candidates and max_length must be positive");
  }
}

std::vector<GenerationOutcome> Generator::generate_batch(
    std::span<const GenerationRequest> requests) {
  std::vector<GenerationOutcome> outcomes(requests.size());
  for (std::size_t i = 0; i < requests.size(); ++i) {
    try {
      outcomes[i].candidates = generate(requests[i]);
    } catch (const GenerationError &e) {
      outcomes[i].error = e.kind();
      outcomes[i].error_message = e.what();
    }
  }
  return outcomes;
}

std::vector<GenerationCandidate> EchoGenerator::generate(
    const GenerationRequest &request) {
  validate_request(request);
  const Tokens &tokens =
      request.source_hint.empty() ? request.input_text : request.source_hint;
  return {{tokens, id()}};
}

MockLexiconGenerator::MockLexiconGenerator(Lexicon lexicon,
                                           std::vector<std::string> templates,
                                           SlotDescriptionMap descriptions)
    : lexicon_(std::move(lexicon)), descriptions_(std::move(descriptions)) {
  for (const auto &[type, values] : lexicon_) {
    if (values.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "lexicon has no values for slot type '" + type + "'");
    }
    auto &tokenized = lexicon_tokens_[type];
    for (const std::string &value : values) {
      Tokens tokens = split_tokens(to_lower(value));
      if (tokens.empty()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "empty lexicon value for slot type '" + type + "'");
      }
      tokenized.push_back(std::move(tokens));
    }
  }
  for (const std::string &line : templates) {
    TemplateSlot slot;
    for (const std::string &token : split_tokens(line)) {
      if (is_placeholder(token)) {
        slot.tokens.push_back(token);
        slot.types.push_back(placeholder_type(token));
      } else {
        slot.tokens.push_back(to_lower(token));
      }
    }
    if (slot.tokens.empty()) continue;
    std::sort(slot.types.begin(), slot.types.end());
    templates_.push_back(std::move(slot));
  }
}

std::optional<std::string> MockLexiconGenerator::type_for_description(
    const Tokens &description, bool from_templates) const {
  auto matches = [&](const std::string &type) {
    try {
      return descriptions_.describe(type) == description;
    } catch (const Error &) {
      return false;
    }
  };
  if (from_templates) {
    for (const TemplateSlot &t : templates_) {
      for (const std::string &type : t.types) {
        if (matches(type)) return type;
      }
    }
  } else {
    for (const auto &[type, values] : lexicon_) {
      if (matches(type)) return type;
    }
  }
  return std::nullopt;
}

std::size_t MockLexiconGenerator::next_index(const std::string &key,
                                             std::size_t k,
                                             const GenerationRequest &req,
                                             std::size_t modulus) {
  std::uint64_t base;
  if (req.seed) {
    base = *req.seed % modulus;
  } else {
    std::lock_guard<std::mutex> lock(mutex_);
    std::size_t &counter = counters_[key];
    base = counter;
    if (k == 0) ++counter;
  }
  return static_cast<std::size_t>((base + k) % modulus);
}

std::vector<GenerationCandidate> MockLexiconGenerator::generate(
    const GenerationRequest &request) {
  validate_request(request);
  const Tokens &text = request.input_text;
  std::vector<std::size_t> sentinels;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == kSentinel) sentinels.push_back(i);
  }
  if (sentinels.size() == 2) {
    return generate_value(request, sentinels[0], sentinels[1]);
  }
  if (!sentinels.empty()) {
    throw GenerationError(GenerationErrorKind::kInvalidRequest,
                          "expected exactly two sentinel tokens");
  }
  return generate_context(request);
}

std::vector<GenerationCandidate> MockLexiconGenerator::generate_value(
    const GenerationRequest &req, std::size_t open, std::size_t close) {
  const Tokens &text = req.input_text;
  const Tokens description(text.begin() + open + 1, text.begin() + close);
  const auto type = type_for_description(description, false);
  if (!type) {
    throw GenerationError(GenerationErrorKind::kUnknownSlotType,
                          "no lexicon entry described as '" +
                              join_tokens(description) + "'");
  }
  const auto &values = lexicon_tokens_.at(*type);
  const std::size_t count = std::min(req.num_candidates, values.size());

  // Counter-based rotation advances once per request, so take the base
  // before the loop.
  const std::size_t base = next_index(*type, 0, req, values.size());
  std::vector<GenerationCandidate> out;
  for (std::size_t k = 0; k < count; ++k) {
    const Tokens &value = values[(base + k) % values.size()];
    Tokens tokens(text.begin(), text.begin() + open);
    tokens.insert(tokens.end(), value.begin(), value.end());
    tokens.insert(tokens.end(), text.begin() + close + 1, text.end());
    out.push_back({truncate(std::move(tokens), req.max_length), id()});
  }
  return out;
}

std::vector<GenerationCandidate> MockLexiconGenerator::generate_context(
    const GenerationRequest &req) {
  const Tokens &text = req.input_text;
  auto open = std::find(text.begin(), text.end(), "(");
  if (open == text.end() || text.back() != ")") {
    if (!req.source_hint.empty()) {
      return {{truncate(req.source_hint, req.max_length), id()}};
    }
    throw GenerationError(GenerationErrorKind::kInvalidRequest,
                          "input is neither a value nor a context input");
  }

  struct FrameSlot {
    std::optional<std::string> type;
    Tokens value;
  };
  std::vector<FrameSlot> slots;
  Tokens segment;
  auto flush = [&]() {
    if (segment.empty()) return;
    auto eq = std::find(segment.begin(), segment.end(), "=");
    FrameSlot slot;
    if (eq != segment.end()) {
      slot.type = type_for_description(Tokens(segment.begin(), eq), true);
      slot.value.assign(eq + 1, segment.end());
    } else {
      slot.value = segment;
    }
    slots.push_back(std::move(slot));
    segment.clear();
  };
  for (auto it = open + 1; it != text.end() - 1; ++it) {
    if (*it == ";") {
      flush();
    } else {
      segment.push_back(*it);
    }
  }
  flush();

  std::vector<std::string> frame_types;
  bool all_known = true;
  for (const FrameSlot &slot : slots) {
    if (!slot.type) {
      all_known = false;
      break;
    }
    frame_types.push_back(*slot.type);
  }
  std::sort(frame_types.begin(), frame_types.end());

  std::vector<const TemplateSlot *> matching;
  if (all_known) {
    for (const TemplateSlot &t : templates_) {
      if (t.types == frame_types) matching.push_back(&t);
    }
  }

  if (matching.empty()) {
    if (!req.source_hint.empty()) {
      return {{truncate(req.source_hint, req.max_length), id()}};
    }
    Tokens tokens;
    for (const FrameSlot &slot : slots) {
      tokens.insert(tokens.end(), slot.value.begin(), slot.value.end());
    }
    if (tokens.empty()) tokens = describe_intent(join_tokens(
        Tokens(text.begin(), open)));
    return {{truncate(std::move(tokens), req.max_length), id()}};
  }

  const std::size_t count = std::min(req.num_candidates, matching.size());
  const std::size_t base = next_index("<context>", 0, req, matching.size());
  std::vector<GenerationCandidate> out;
  for (std::size_t k = 0; k < count; ++k) {
    const TemplateSlot &t = *matching[(base + k) % matching.size()];
    std::vector<bool> used(slots.size(), false);
    Tokens tokens;
    for (const std::string &token : t.tokens) {
      if (!is_placeholder(token)) {
        tokens.push_back(token);
        continue;
      }
      const std::string type = placeholder_type(token);
      for (std::size_t s = 0; s < slots.size(); ++s) {
        if (!used[s] && slots[s].type == type) {
          used[s] = true;
          tokens.insert(tokens.end(), slots[s].value.begin(),
                        slots[s].value.end());
          break;
        }
      }
    }
    out.push_back({truncate(std::move(tokens), req.max_length), id()});
  }
  return out;
}

MockLexiconGenerator::Lexicon MockLexiconGenerator::load_lexicon(
    const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open lexicon " + path.string());
  Lexicon lexicon;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw Error(ErrorCode::kInvalidConfig,
                  path.string() + ":" + std::to_string(line_no) +
                      ": expected slot_type<TAB>value");
    }
    const std::string value = join_tokens(split_tokens(to_lower(
        std::string_view(line).substr(tab + 1))));
    if (value.empty()) continue;
    lexicon[line.substr(0, tab)].push_back(value);
  }
  return lexicon;
}

MockLexiconGenerator::Lexicon MockLexiconGenerator::lexicon_from_dictionary(
    const SlotDictionary &dict) {
  Lexicon lexicon;
  for (const auto &[type, values] : dict.entries()) {
    lexicon[type].assign(values.begin(), values.end());
  }
  return lexicon;
}

std::vector<std::string> MockLexiconGenerator::load_templates(
    const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open templates " + path.string());
  std::vector<std::string> templates;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!split_tokens(line).empty()) templates.push_back(line);
  }
  return templates;
}

}  // namespace slotaug
