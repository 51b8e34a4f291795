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

#ifndef SLOTAUG_FILTER_H_
#define SLOTAUG_FILTER_H_

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "slotaug/corpus.h"
#include "slotaug/generator.h"
#include "slotaug/transform.h"

namespace slotaug {

struct Provenance {
  Mode mode = Mode::kValue;
  std::size_t source_id = 0;
  std::string slot_type;  // chosen slot type; empty in context mode
  std::string backend_id;
  std::size_t candidate_rank = 0;

  friend bool operator==(const Provenance &, const Provenance &) = default;
};

struct AugmentedExample {
  Utterance utterance;
  Provenance provenance;

  friend bool operator==(const AugmentedExample &,
                         const AugmentedExample &) = default;
};

enum class RejectReason {
  kContextMismatch,
  kEmptyValue,
  kMissingValue,
  kExtraValue,
  kDuplicate,
  kMalformed,
};

inline constexpr std::size_t kNumRejectReasons = 6;

const char *reject_reason_name(RejectReason reason);

struct Rejection {
  RejectReason reason;
  std::string detail;
};

using FilterOutcome = std::variant<AugmentedExample, Rejection>;

inline bool accepted(const FilterOutcome &outcome) {
  return std::holds_alternative<AugmentedExample>(outcome);
}

// Per-reason counters over every candidate examined.
class FilterReport {
 public:
  void record_accepted() { ++accepted_; }
  void record(RejectReason reason) {
    ++rejected_[static_cast<std::size_t>(reason)];
  }
  void record(const FilterOutcome &outcome);

  std::size_t accepted() const { return accepted_; }
  std::size_t rejected(RejectReason reason) const {
    return rejected_[static_cast<std::size_t>(reason)];
  }
  std::size_t total() const;

  void merge(const FilterReport &other);

  // (name, count) rows in a fixed order: accepted, then one
  // rejected_<reason> row per reason.
  std::vector<std::pair<std::string, std::size_t>> rows() const;

  // "name<TAB>count" per line.
  void write_tsv(const std::filesystem::path &path) const;

  friend bool operator==(const FilterReport &, const FilterReport &) = default;

 private:
  std::size_t accepted_ = 0;
  std::array<std::size_t, kNumRejectReasons> rejected_{};
};

// Keeps a value-mode candidate iff it starts with the input's left context,
// ends with its right context, and leaves a non-empty middle. The middle is
// tagged with the chosen slot type; context tokens keep their source tags.
FilterOutcome filter_value_candidate(const GenerationCandidate &candidate,
                                     const AugmentationInput &input,
                                     std::size_t rank = 0);

// Dictionary values indexed by first token for repeated scans.
class DictionaryScanner {
 public:
  explicit DictionaryScanner(const SlotDictionary &dict);

  struct Match {
    std::string type;
    std::size_t begin = 0;
    std::size_t end = 0;
  };

  // Leftmost occurrence of a dictionary value lying entirely on unclaimed
  // tokens; the longest value wins at a given start.
  std::optional<Match> find_unclaimed(const Tokens &tokens,
                                      const std::vector<bool> &claimed) const;

 private:
  std::unordered_map<std::string, std::vector<SlotDictionary::Entry>> by_first_;
};

// Keeps a context-mode candidate iff every frame value occurs in it (greedy
// leftmost disjoint match in frame order) and no dictionary value occurs
// outside the matched regions. Matched regions take their frame types,
// everything else is "O".
FilterOutcome filter_context_candidate(const GenerationCandidate &candidate,
                                       const SlotFrame &frame,
                                       const SlotDictionary &dict,
                                       Provenance provenance = {});

FilterOutcome filter_context_candidate(const GenerationCandidate &candidate,
                                       const SlotFrame &frame,
                                       const DictionaryScanner &scanner,
                                       Provenance provenance = {});

// Convenience overload taking provenance from a context-mode input.
FilterOutcome filter_context_candidate(const GenerationCandidate &candidate,
                                       const AugmentationInput &input,
                                       const DictionaryScanner &scanner,
                                       std::size_t rank = 0);

// Set of (tokens, tags) pairs already present.
class DuplicateIndex {
 public:
  DuplicateIndex() = default;
  explicit DuplicateIndex(const Dataset &seed);

  // False when an identical (tokens, tags) pair was inserted before.
  bool insert(const Utterance &u);
  bool contains(const Utterance &u) const;

 private:
  static std::string key(const Utterance &u);
  std::unordered_set<std::string> keys_;
};

// Drops examples equal, as (tokens, tags), to an utterance of `against` or to
// an earlier example. Order is preserved.
std::vector<AugmentedExample> dedupe(const std::vector<AugmentedExample> &examples,
                                     const Dataset &against,
                                     std::size_t *removed = nullptr);

}  // namespace slotaug

#endif  // SLOTAUG_FILTER_H_
