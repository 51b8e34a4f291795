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

#include "slotaug/transform.h"

#include <cctype>
#include <fstream>

namespace slotaug {

const char *mode_name(Mode mode) {
  return mode == Mode::kValue ? "value" : "context";
}

Mode parse_mode(std::string_view text) {
  if (text == "value") return Mode::kValue;
  if (text == "context") return Mode::kContext;
  throw Error(ErrorCode::kInvalidArgument,
              "mode must be 'value' or 'context', got '" + std::string(text) +
                  "'");
}

Tokens default_description(std::string_view slot_type) {
  std::string spaced(slot_type);
  for (char &c : spaced) {
    if (c == '_') c = ' ';
  }
  return split_tokens(to_lower(spaced));
}

Tokens describe_intent(std::string_view intent) {
  std::string spaced;
  for (std::size_t i = 0; i < intent.size(); ++i) {
    const char c = intent[i];
    if (c == '_') {
      spaced += ' ';
      continue;
    }
    const bool upper = c >= 'A' && c <= 'Z';
    if (upper && i > 0) {
      const char prev = intent[i - 1];
      if ((prev >= 'a' && prev <= 'z') || (prev >= '0' && prev <= '9')) {
        spaced += ' ';
      }
    }
    spaced += c;
  }
  return split_tokens(to_lower(spaced));
}

SlotDescriptionMap SlotDescriptionMap::load(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open description file " + path.string());
  }
  SlotDescriptionMap map;
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
                      ": expected slot_type<TAB>description");
    }
    map.set(line.substr(0, tab), line.substr(tab + 1));
  }
  return map;
}

void SlotDescriptionMap::set(const std::string &type,
                             std::string_view description) {
  Tokens tokens = split_tokens(to_lower(description));
  if (tokens.empty()) {
    throw Error(ErrorCode::kMissingDescription,
                "empty description for slot type '" + type + "'");
  }
  for (const std::string &token : tokens) {
    if (token == kSentinel) {
      throw Error(ErrorCode::kMissingDescription,
                  "description for '" + type + "' contains the sentinel");
    }
  }
  overrides_[type] = std::move(tokens);
}

Tokens SlotDescriptionMap::describe(const std::string &type) const {
  if (auto it = overrides_.find(type); it != overrides_.end()) {
    return it->second;
  }
  if (allow_defaults_) {
    Tokens tokens = default_description(type);
    if (!tokens.empty()) return tokens;
  }
  throw Error(ErrorCode::kMissingDescription,
              "no description for slot type '" + type + "'");
}

Tokens AugmentationInput::left_context() const {
  return Tokens(text.begin(), text.begin() + region_begin);
}

Tokens AugmentationInput::right_context() const {
  return Tokens(text.begin() + region_end, text.end());
}

AugmentationInput delexicalize_value(const Utterance &u, const SlotFrame &frame,
                                     std::size_t j,
                                     const SlotDescriptionMap &descriptions,
                                     std::size_t source_id) {
  if (j >= frame.slots.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "slot index " + std::to_string(j) + " out of range for " +
                    std::to_string(frame.slots.size()) + " slots");
  }
  const SlotSpan &slot = frame.slots[j];
  const Tokens description = descriptions.describe(slot.type);

  AugmentationInput input;
  input.mode = Mode::kValue;
  input.source = u;
  input.source_id = source_id;
  input.frame = frame;
  input.chosen_slot = j;
  input.text.assign(u.tokens.begin(), u.tokens.begin() + slot.begin);
  input.region_begin = input.text.size();
  input.text.emplace_back(kSentinel);
  input.text.insert(input.text.end(), description.begin(), description.end());
  input.text.emplace_back(kSentinel);
  input.region_end = input.text.size();
  input.text.insert(input.text.end(), u.tokens.begin() + slot.end,
                    u.tokens.end());
  return input;
}

std::vector<AugmentationInput> enumerate_value_inputs(
    const Utterance &u, const SlotDescriptionMap &descriptions,
    std::size_t source_id) {
  const SlotFrame frame = extract_frame(u);
  if (frame.slots.empty()) {
    throw Error(ErrorCode::kNoSlots,
                "utterance " + std::to_string(source_id) + " has no slots");
  }
  std::vector<AugmentationInput> inputs;
  inputs.reserve(frame.slots.size());
  for (std::size_t j = 0; j < frame.slots.size(); ++j) {
    inputs.push_back(delexicalize_value(u, frame, j, descriptions, source_id));
  }
  return inputs;
}

AugmentationInput sample_value_input(const Utterance &u,
                                     const SlotDescriptionMap &descriptions,
                                     Rng &rng, std::size_t source_id) {
  const SlotFrame frame = extract_frame(u);
  if (frame.slots.empty()) {
    throw Error(ErrorCode::kNoSlots,
                "utterance " + std::to_string(source_id) + " has no slots");
  }
  const auto j = static_cast<std::size_t>(rng.uniform(frame.slots.size()));
  return delexicalize_value(u, frame, j, descriptions, source_id);
}

Tokens serialize_frame(const SlotFrame &frame,
                       const SlotDescriptionMap &descriptions) {
  Tokens out = describe_intent(frame.intent);
  out.emplace_back("(");
  for (std::size_t i = 0; i < frame.slots.size(); ++i) {
    if (i > 0) out.emplace_back(";");
    const Tokens type_words = descriptions.describe(frame.slots[i].type);
    out.insert(out.end(), type_words.begin(), type_words.end());
    out.emplace_back("=");
    out.insert(out.end(), frame.slots[i].value.begin(),
               frame.slots[i].value.end());
  }
  out.emplace_back(")");
  return out;
}

AugmentationInput make_context_input(const Utterance &u,
                                     const SlotDescriptionMap &descriptions,
                                     std::size_t source_id) {
  AugmentationInput input;
  input.mode = Mode::kContext;
  input.source = u;
  input.source_id = source_id;
  input.frame = extract_frame(u);
  input.text = serialize_frame(input.frame, descriptions);
  return input;
}

std::vector<std::size_t> TrainingPair::smoothed_positions() const {
  std::vector<std::size_t> positions;
  if (value_span) {
    for (std::size_t i = value_span->first; i < value_span->second; ++i) {
      positions.push_back(i);
    }
  } else if (context_positions) {
    positions = *context_positions;
  }
  return positions;
}

TrainingPairSet make_training_pairs(const Dataset &d, Mode mode,
                                    const SlotDescriptionMap &descriptions) {
  TrainingPairSet set;
  for (std::size_t id = 0; id < d.size(); ++id) {
    const Utterance &u = d.utterances[id];
    if (mode == Mode::kValue) {
      const SlotFrame frame = extract_frame(u);
      if (frame.slots.empty()) {
        ++set.skipped_no_slots;
        continue;
      }
      for (std::size_t j = 0; j < frame.slots.size(); ++j) {
        TrainingPair pair;
        pair.input = delexicalize_value(u, frame, j, descriptions, id);
        pair.target = u.tokens;
        pair.value_span = {frame.slots[j].begin, frame.slots[j].end};
        set.pairs.push_back(std::move(pair));
      }
    } else {
      TrainingPair pair;
      pair.input = make_context_input(u, descriptions, id);
      pair.target = u.tokens;
      std::vector<std::size_t> positions;
      for (std::size_t i = 0; i < u.tags.size(); ++i) {
        if (u.tags[i] == kOutsideTag) positions.push_back(i);
      }
      pair.context_positions = std::move(positions);
      set.pairs.push_back(std::move(pair));
    }
  }
  return set;
}

void write_training_pairs(const std::vector<TrainingPair> &pairs,
                          const std::filesystem::path &dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string());
  std::ofstream inputs(dir / "inputs.txt", std::ios::binary);
  std::ofstream targets(dir / "targets.txt", std::ios::binary);
  std::ofstream spans(dir / "spans.tsv", std::ios::binary);
  if (!inputs || !targets || !spans) {
    throw Error(ErrorCode::kIo, "cannot write training pairs in " + dir.string());
  }
  for (std::size_t line = 0; line < pairs.size(); ++line) {
    const TrainingPair &pair = pairs[line];
    inputs << join_tokens(pair.input.text) << '\n';
    targets << join_tokens(pair.target) << '\n';
    const auto positions = pair.smoothed_positions();
    std::size_t i = 0;
    while (i < positions.size()) {
      std::size_t j = i + 1;
      while (j < positions.size() && positions[j] == positions[j - 1] + 1) ++j;
      spans << line << '\t' << positions[i] << '\t' << positions[j - 1] + 1
            << '\t' << mode_name(pair.input.mode) << '\n';
      i = j;
    }
  }
  if (!inputs || !targets || !spans) {
    throw Error(ErrorCode::kIo, "write failed in " + dir.string());
  }
}

}  // namespace slotaug
