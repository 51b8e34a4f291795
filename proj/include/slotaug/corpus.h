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

#ifndef SLOTAUG_CORPUS_H_
#define SLOTAUG_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "slotaug/error.h"

namespace slotaug {

using Tokens = std::vector<std::string>;

// Reserved delimiter of the description region in value-mode inputs. It may
// never appear as a corpus token.
inline constexpr std::string_view kSentinel = "_";

inline constexpr std::string_view kOutsideTag = "O";

// One labeled utterance: lowercase tokens, one BIO tag per token, an intent.
struct Utterance {
  Tokens tokens;
  Tokens tags;
  std::string intent;

  std::size_t size() const { return tokens.size(); }

  friend bool operator==(const Utterance &, const Utterance &) = default;
};

// A typed value span [begin, end) over utterance tokens.
struct SlotSpan {
  std::string type;
  Tokens value;
  std::size_t begin = 0;
  std::size_t end = 0;

  // Value tokens joined by single spaces.
  std::string value_string() const;

  friend bool operator==(const SlotSpan &, const SlotSpan &) = default;
};

struct SlotFrame {
  std::string intent;
  std::vector<SlotSpan> slots;

  friend bool operator==(const SlotFrame &, const SlotFrame &) = default;
};

struct Dataset {
  std::string name;
  std::vector<Utterance> utterances;

  std::size_t size() const { return utterances.size(); }
  bool empty() const { return utterances.empty(); }
};

// Slot type -> distinct space-joined values observed in a dataset.
class SlotDictionary {
 public:
  void add(const std::string &type, const std::string &value);

  bool contains(const std::string &type, const std::string &value) const;
  const std::map<std::string, std::set<std::string>> &entries() const {
    return entries_;
  }
  std::size_t num_types() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // Every (type, value tokens) entry, longest value first. Ties are broken
  // by value string then type so the order is total.
  struct Entry {
    std::string type;
    Tokens value;
  };
  std::vector<Entry> longest_first() const;

  friend bool operator==(const SlotDictionary &, const SlotDictionary &) =
      default;

 private:
  std::map<std::string, std::set<std::string>> entries_;
};

// BIO tag decomposition.
enum class TagKind { kOutside, kBegin, kInside };

struct ParsedTag {
  TagKind kind = TagKind::kOutside;
  std::string type;
};

// Returns nullopt unless the tag is "O", "B-<type>" or "I-<type>" with a
// non-empty type.
std::optional<ParsedTag> parse_tag(std::string_view tag);

std::string begin_tag(std::string_view type);
std::string inside_tag(std::string_view type);

// 0-based index of the first tag that breaks BIO well-formedness (bad
// syntax, or an I- tag not continuing a run of the same type).
std::optional<std::size_t> find_bio_violation(const Tokens &tags);

// True when the token is non-empty, free of whitespace and not the sentinel.
bool is_valid_token(std::string_view token);

// Checks every Utterance invariant. Throws CorpusError with a 1-based
// position; the line is left at zero.
void validate_utterance(const Utterance &u);
bool is_valid_utterance(const Utterance &u);

// Splits on runs of ASCII whitespace.
Tokens split_tokens(std::string_view text);
std::string join_tokens(const Tokens &tokens);

// ASCII lowercasing; bytes >= 0x80 pass through unchanged.
std::string to_lower(std::string_view text);

// Reads seq.in / seq.out / label from dir. Tokens are lowercased, tags and
// intents are kept verbatim. The dataset name is the directory name.
Dataset parse_dataset(const std::filesystem::path &dir);

// Writes the three-file layout, creating dir if needed.
void write_dataset(const Dataset &d, const std::filesystem::path &dir);

SlotFrame extract_frame(const Utterance &u);

// Renders slot spans back to a BIO tag sequence of the given length.
Tokens render_bio(const SlotFrame &frame, std::size_t length);

// Exact rational in (0, 1].
struct Fraction {
  std::uint64_t numerator = 1;
  std::uint64_t denominator = 1;

  // Accepts "a/b", an integer, or a decimal such as "0.025".
  static Fraction parse(std::string_view text);

  // floor(n * numerator / denominator) without overflow.
  std::size_t apply_floor(std::size_t n) const;
};

// Seeded shuffle, then the first floor(|d| * fraction) utterances in
// shuffled order. Throws kInvalidFraction or kEmptyResult.
Dataset split_dataset(const Dataset &d, Fraction fraction, std::uint64_t seed);

SlotDictionary build_slot_dictionary(const Dataset &d);

}  // namespace slotaug

#endif  // SLOTAUG_CORPUS_H_
