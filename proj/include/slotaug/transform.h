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

#ifndef SLOTAUG_TRANSFORM_H_
#define SLOTAUG_TRANSFORM_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "slotaug/corpus.h"
#include "slotaug/random.h"

namespace slotaug {

enum class Mode { kValue, kContext };

const char *mode_name(Mode mode);
// Accepts "value" or "context".
Mode parse_mode(std::string_view text);

// Natural-language descriptions of slot types. Types without an explicit
// entry fall back to the type name with underscores turned into spaces,
// unless defaults are disabled.
class SlotDescriptionMap {
 public:
  SlotDescriptionMap() = default;

  // Lines of the form "slot_type<TAB>description". Blank lines and lines
  // starting with '#' are skipped.
  static SlotDescriptionMap load(const std::filesystem::path &path);

  // Throws kMissingDescription if the description is empty or contains the
  // sentinel token.
  void set(const std::string &type, std::string_view description);

  void set_allow_defaults(bool allow) { allow_defaults_ = allow; }
  bool allow_defaults() const { return allow_defaults_; }

  // Description tokens for a type. Throws kMissingDescription.
  Tokens describe(const std::string &type) const;

  const std::map<std::string, Tokens> &overrides() const { return overrides_; }

 private:
  std::map<std::string, Tokens> overrides_;
  bool allow_defaults_ = true;
};

// "time_range" -> {"time", "range"}; lowercased. May be empty.
Tokens default_description(std::string_view slot_type);

// Intent label in word form: "BookRestaurant" -> {"book", "restaurant"},
// "atis_flight" -> {"atis", "flight"}, "book restaurant" unchanged.
Tokens describe_intent(std::string_view intent);

struct AugmentationInput {
  Mode mode = Mode::kValue;
  Tokens text;
  Utterance source;
  std::size_t source_id = 0;
  SlotFrame frame;
  // Value mode only.
  std::optional<std::size_t> chosen_slot;
  // Value mode: the sentinel region [region_begin, region_end) of text,
  // sentinels included.
  std::size_t region_begin = 0;
  std::size_t region_end = 0;

  const SlotSpan &chosen() const { return frame.slots.at(chosen_slot.value()); }
  // Tokens before and after the sentinel region.
  Tokens left_context() const;
  Tokens right_context() const;
};

// Replaces the tokens of frame.slots[j] by "_ <description> _".
AugmentationInput delexicalize_value(const Utterance &u, const SlotFrame &frame,
                                     std::size_t j,
                                     const SlotDescriptionMap &descriptions,
                                     std::size_t source_id = 0);

// One input per slot in slot order. Throws kNoSlots for slotless utterances.
std::vector<AugmentationInput> enumerate_value_inputs(
    const Utterance &u, const SlotDescriptionMap &descriptions,
    std::size_t source_id = 0);

// A single input for a uniformly drawn slot. Throws kNoSlots.
AugmentationInput sample_value_input(const Utterance &u,
                                     const SlotDescriptionMap &descriptions,
                                     Rng &rng, std::size_t source_id = 0);

// "<intent words> ( <type words> = <value> ; ... )".
Tokens serialize_frame(const SlotFrame &frame,
                       const SlotDescriptionMap &descriptions);

AugmentationInput make_context_input(const Utterance &u,
                                     const SlotDescriptionMap &descriptions,
                                     std::size_t source_id = 0);

struct TrainingPair {
  AugmentationInput input;
  Tokens target;
  // Value mode: the chosen value tokens in target.
  std::optional<std::pair<std::size_t, std::size_t>> value_span;
  // Context mode: target indices tagged "O".
  std::optional<std::vector<std::size_t>> context_positions;

  // Target positions that receive label smoothing.
  std::vector<std::size_t> smoothed_positions() const;
};

struct TrainingPairSet {
  std::vector<TrainingPair> pairs;
  std::size_t skipped_no_slots = 0;
};

// Value mode: one pair per (utterance, slot). Context mode: one per utterance.
TrainingPairSet make_training_pairs(const Dataset &d, Mode mode,
                                    const SlotDescriptionMap &descriptions);

// Writes inputs.txt, targets.txt and spans.tsv. Each spans.tsv row is
// "line<TAB>start<TAB>end<TAB>mode" for one maximal run of smoothed
// positions; line indices are 0-based.
void write_training_pairs(const std::vector<TrainingPair> &pairs,
                          const std::filesystem::path &dir);

}  // namespace slotaug

#endif  // SLOTAUG_TRANSFORM_H_
